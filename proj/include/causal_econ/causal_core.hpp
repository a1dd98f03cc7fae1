#pragma once

// Signed causal diagrams, their undirected skeletons, and feedback loops.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causal_econ/error.hpp"

namespace causal_econ {

enum class Polarity { positive, negative };

constexpr Polarity operator*(Polarity a, Polarity b) noexcept {
  return a == b ? Polarity::positive : Polarity::negative;
}

constexpr Polarity flip(Polarity p) noexcept {
  return p == Polarity::positive ? Polarity::negative : Polarity::positive;
}

/// "+" or "-".
std::string_view sign_char(Polarity p);
std::string_view to_string(Polarity p);

struct Variable {
  std::string id;
  std::string label;
  std::optional<std::string> symbol;
  std::optional<std::string> group;

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct CausalEdge {
  std::string from;
  std::string to;
  Polarity polarity = Polarity::positive;

  friend bool operator==(const CausalEdge&, const CausalEdge&) = default;
};

/// A validated diagram. Variables are kept sorted by id and edges by
/// (from, to), so two diagrams with the same content compare equal
/// regardless of construction order.
class CausalDiagram {
 public:
  CausalDiagram() = default;

  const std::string& name() const noexcept { return name_; }
  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::vector<CausalEdge>& edges() const noexcept { return edges_; }

  bool empty() const noexcept { return variables_.empty(); }
  bool contains(std::string_view id) const;
  const Variable* find(std::string_view id) const;

  /// Index of a variable in variables(), or nullopt.
  std::optional<std::size_t> index_of(std::string_view id) const;

  /// Resolves a variable by id first, then by symbol.
  std::optional<std::string> resolve(std::string_view id_or_symbol) const;

  /// Outgoing edges of each variable, indexed like variables().
  const std::vector<std::vector<std::size_t>>& out_edges() const noexcept { return out_; }

  friend bool operator==(const CausalDiagram& a, const CausalDiagram& b) {
    return a.name_ == b.name_ && a.variables_ == b.variables_ && a.edges_ == b.edges_;
  }

 private:
  friend CausalDiagram build_diagram(std::string name, std::vector<Variable> variables,
                                     std::vector<CausalEdge> edges);

  std::string name_;
  std::vector<Variable> variables_;
  std::vector<CausalEdge> edges_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<std::size_t>> out_;  // edge indices
};

/// Validates and canonicalises. Throws Error with duplicate_variable_id,
/// duplicate_symbol, empty_variable_id, dangling_edge_endpoint, self_loop or
/// duplicate_edge.
CausalDiagram build_diagram(std::string name, std::vector<Variable> variables,
                            std::vector<CausalEdge> edges);

/// Unordered pair stored with first < second.
struct Link {
  std::string first;
  std::string second;

  Link() = default;
  Link(std::string a, std::string b);

  bool touches(std::string_view id) const { return first == id || second == id; }

  friend auto operator<=>(const Link&, const Link&) = default;
  friend bool operator==(const Link&, const Link&) = default;
};

class CausalSkeleton {
 public:
  CausalSkeleton() = default;

  const std::string& name() const noexcept { return name_; }
  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::vector<Link>& links() const noexcept { return links_; }

  bool contains(std::string_view id) const;
  bool has_link(const Link& link) const;

  friend bool operator==(const CausalSkeleton&, const CausalSkeleton&) = default;

 private:
  friend CausalSkeleton build_skeleton(std::string name, std::vector<Variable> variables,
                                       std::vector<Link> links);

  std::string name_;
  std::vector<Variable> variables_;
  std::vector<Link> links_;
};

/// Throws on duplicate ids, dangling endpoints, self links or repeated pairs.
CausalSkeleton build_skeleton(std::string name, std::vector<Variable> variables,
                              std::vector<Link> links);

/// Erases direction and polarity; A->B and B->A collapse into one link.
CausalSkeleton skeleton_of(const CausalDiagram& diagram);

enum class LoopPolarity { reinforcing, balancing };

std::string_view to_string(LoopPolarity p);

struct FeedbackLoop {
  std::vector<CausalEdge> cycle;
  LoopPolarity polarity = LoopPolarity::reinforcing;

  /// Variable ids along the cycle, starting variable not repeated.
  std::vector<std::string> path() const;

  friend bool operator==(const FeedbackLoop&, const FeedbackLoop&) = default;
};

/// Reinforcing iff the number of negative edges is even. Throws not_a_cycle
/// unless the edges chain head to tail, close, and visit no variable twice.
LoopPolarity loop_polarity(std::span<const CausalEdge> cycle);

struct LoopOptions {
  std::size_t max_cycles = 10'000;
};

struct LoopEnumeration {
  std::vector<FeedbackLoop> loops;
  bool truncated = false;
};

/// All simple directed cycles (Johnson's algorithm). Each cycle starts at its
/// lexicographically smallest variable id; loops are ordered by length, then
/// by id sequence.
LoopEnumeration enumerate_loops(const CausalDiagram& diagram, LoopOptions options = {});

}  // namespace causal_econ
