#include "causal_econ/multiplier.hpp"

#include <cmath>

namespace causal_econ {

std::string_view to_string(MultiplierKind k) {
  return k == MultiplierKind::government_purchases ? "government_purchases" : "tax";
}

namespace {

void check_mpc(double mpc) {
  if (!(mpc >= 0.0 && mpc < 1.0))
    throw Error(ErrorCode::mpc_out_of_range,
                "MPC must satisfy 0 <= MPC < 1, got " + std::to_string(mpc));
}

void check_trace_args(double delta, int rounds) {
  if (!std::isfinite(delta) || delta < 0.0)
    throw Error(ErrorCode::invalid_parameter, "change must be a finite nonnegative amount");
  if (rounds < 1) throw Error(ErrorCode::invalid_parameter, "rounds must be at least 1");
}

std::string ordinal(int n) {
  switch (n) {
    case 1: return "First";
    case 2: return "Second";
    case 3: return "Third";
    default: break;
  }
  const int tens = n % 100;
  const char* suffix = "th";
  if (tens < 11 || tens > 13) {
    switch (n % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(n) + suffix;
}

}  // namespace

double g_multiplier(double mpc) {
  check_mpc(mpc);
  return 1.0 / (1.0 - mpc);
}

double t_multiplier(double mpc) {
  check_mpc(mpc);
  return mpc / (1.0 - mpc);
}

std::string trace_label(MultiplierKind kind, int round) {
  if (round == 0)
    return kind == MultiplierKind::government_purchases ? "Initial Change in Government Purchases"
                                                        : "Initial Change in Taxes";
  return ordinal(round) + " Change in Consumption";
}

IterationTrace trace_g(const MultiplierParams& params, int rounds) {
  check_mpc(params.mpc);
  check_trace_args(params.delta_g, rounds);

  IterationTrace trace{MultiplierKind::government_purchases, params.mpc, params.delta_g, {},
                       params.delta_g * g_multiplier(params.mpc)};
  double term = params.delta_g;
  double total = 0.0;
  for (int n = 0; n <= rounds; ++n) {
    total += term;
    trace.rows.push_back({n, trace_label(trace.kind, n), term, term, total});
    term *= params.mpc;
  }
  return trace;
}

IterationTrace trace_t(const MultiplierParams& params, int rounds) {
  check_mpc(params.mpc);
  check_trace_args(params.delta_t, rounds);

  IterationTrace trace{MultiplierKind::tax, params.mpc, params.delta_t, {},
                       params.delta_t * t_multiplier(params.mpc)};
  trace.rows.push_back({0, trace_label(trace.kind, 0), -params.delta_t, 0.0, 0.0});
  double term = params.delta_t;
  double total = 0.0;
  for (int n = 1; n <= rounds; ++n) {
    term *= params.mpc;
    total += term;
    trace.rows.push_back({n, trace_label(trace.kind, n), term, term, total});
  }
  return trace;
}

bool loop_consistency_check(const CausalDiagram& diagram) {
  const auto loops = enumerate_loops(diagram, {.max_cycles = 2});
  return loops.loops.size() == 1 && loops.loops.front().polarity == LoopPolarity::reinforcing;
}

}  // namespace causal_econ
