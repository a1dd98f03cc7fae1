#pragma once

// Qualitative what-if queries over signed diagrams.
//
// A shock on one variable reaches a target along every simple directed path
// that avoids frozen variables. Each path carries the product of its edge
// signs. If all paths agree the target moves in (path sign) x (shock
// direction); if both signs occur the outcome is indeterminate; with no path
// there is no effect.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "causal_econ/causal_core.hpp"

namespace causal_econ {

enum class Direction { increase, decrease };

enum class Outcome { increase, decrease, no_effect, indeterminate };

std::string_view to_string(Direction d);
std::string_view to_string(Outcome o);

struct Shock {
  std::string variable;
  Direction direction = Direction::increase;
};

using FrozenSet = std::set<std::string, std::less<>>;

struct WitnessPath {
  std::vector<CausalEdge> edges;
  Polarity sign = Polarity::positive;

  /// Variables visited, endpoints included. Needs the source for empty paths.
  std::vector<std::string> variables(std::string_view source) const;

  friend bool operator==(const WitnessPath&, const WitnessPath&) = default;
};

struct PropagationVerdict {
  std::string target;
  Outcome outcome = Outcome::no_effect;
  /// Sorted by length, then by variable sequence.
  std::vector<WitnessPath> witness_paths;

  friend bool operator==(const PropagationVerdict&, const PropagationVerdict&) = default;
};

struct PropagationOptions {
  /// Upper bound on the number of simple paths explored from the shock.
  std::size_t path_budget = 100'000;
};

/// Throws unknown_variable, shocked_variable_frozen or path_budget_exceeded.
PropagationVerdict propagate(const CausalDiagram& diagram, const Shock& shock,
                             std::string_view target, const FrozenSet& frozen = {},
                             PropagationOptions options = {});

std::map<std::string, PropagationVerdict> propagate_all(const CausalDiagram& diagram,
                                                        const Shock& shock,
                                                        const FrozenSet& frozen = {},
                                                        PropagationOptions options = {});

struct McqQuestion {
  Shock shock;
  std::string target;
  FrozenSet frozen;
};

Outcome answer_mcq(const CausalDiagram& diagram, const McqQuestion& question,
                   PropagationOptions options = {});

}  // namespace causal_econ
