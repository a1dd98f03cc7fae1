#pragma once

// Diagrams shipped with the toolkit.

#include <optional>
#include <string_view>
#include <vector>

#include "causal_econ/causal_core.hpp"

namespace causal_econ::fixtures {

/// Price raises marginal revenue (+) and lowers sales (-); both raise revenue.
CausalDiagram price_revenue();

/// The part of the national income model whose links are stated explicitly
/// in the course material: production, income, taxes, savings and the
/// loanable funds market.
CausalDiagram national_income_subset();

/// Keynesian cross: eight variables, eight links, one negative link
/// (taxes -> disposable income) and a single reinforcing loop
/// C -> PE -> Y -> Y_T -> C.
CausalDiagram multiplier();

std::vector<std::string_view> names();

/// nullopt for an unknown fixture name.
std::optional<CausalDiagram> by_name(std::string_view name);

}  // namespace causal_econ::fixtures
