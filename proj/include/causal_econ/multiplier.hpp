#pragma once

// Keynesian-cross multipliers, as closed forms and as round-by-round traces
// of the consumption/income feedback loop.

#include <string>
#include <string_view>
#include <vector>

#include "causal_econ/causal_core.hpp"

namespace causal_econ {

struct MultiplierParams {
  double mpc = 0.0;      // marginal propensity to consume, [0, 1)
  double delta_g = 0.0;  // increase in government purchases
  double delta_t = 0.0;  // decrease in taxes
};

enum class MultiplierKind { government_purchases, tax };

std::string_view to_string(MultiplierKind k);

struct TraceRow {
  int round = 0;
  std::string label;
  /// The quantity shown on this row of the table. Equals the income
  /// contribution except for the tax bookkeeping row, which shows -dT.
  double amount = 0.0;
  double contribution = 0.0;
  double cumulative = 0.0;
};

struct IterationTrace {
  MultiplierKind kind = MultiplierKind::government_purchases;
  double mpc = 0.0;
  double delta = 0.0;
  std::vector<TraceRow> rows;
  double closed_form_total = 0.0;

  double cumulative() const { return rows.empty() ? 0.0 : rows.back().cumulative; }
};

/// 1 / (1 - mpc). Throws mpc_out_of_range unless 0 <= mpc < 1.
double g_multiplier(double mpc);

/// mpc / (1 - mpc): income gained per unit of tax decrease.
double t_multiplier(double mpc);

/// Round 0 is the initial purchase dG; round n adds mpc^n dG.
IterationTrace trace_g(const MultiplierParams& params, int rounds);

/// Round 0 books the tax change -dT with no income effect; round n adds
/// mpc^n dT.
IterationTrace trace_t(const MultiplierParams& params, int rounds);

/// "Initial Change in Government Purchases", "First Change in Consumption",
/// ..., "Third ...", then "4th", "5th", ...
std::string trace_label(MultiplierKind kind, int round);

/// True iff the diagram has exactly one feedback loop and it is reinforcing.
bool loop_consistency_check(const CausalDiagram& diagram);

}  // namespace causal_econ
