#include "causal_econ/causal_core.hpp"

#include <algorithm>
#include <set>

namespace causal_econ {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::duplicate_variable_id: return "duplicate-variable-id";
    case ErrorCode::duplicate_symbol: return "duplicate-symbol";
    case ErrorCode::empty_variable_id: return "empty-variable-id";
    case ErrorCode::dangling_edge_endpoint: return "dangling-edge-endpoint";
    case ErrorCode::self_loop: return "self-loop";
    case ErrorCode::duplicate_edge: return "duplicate-edge";
    case ErrorCode::not_a_cycle: return "not-a-cycle";
    case ErrorCode::unknown_variable: return "unknown-variable";
    case ErrorCode::shocked_variable_frozen: return "shocked-variable-frozen";
    case ErrorCode::path_budget_exceeded: return "path-budget-exceeded";
    case ErrorCode::mpc_out_of_range: return "mpc-out-of-range";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::skeleton_mismatch: return "skeleton-mismatch";
    case ErrorCode::link_not_in_skeleton: return "link-not-in-skeleton";
    case ErrorCode::duplicate_answer: return "duplicate-answer";
    case ErrorCode::empty_input: return "empty-input";
    case ErrorCode::no_common_students: return "no-common-students";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::conflict: return "conflict";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

std::string_view sign_char(Polarity p) { return p == Polarity::positive ? "+" : "-"; }

std::string_view to_string(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}

std::string_view to_string(LoopPolarity p) {
  return p == LoopPolarity::reinforcing ? "reinforcing" : "balancing";
}

namespace {

void check_variables(std::span<const Variable> variables) {
  std::set<std::string_view> ids;
  std::set<std::string_view> symbols;
  for (const auto& v : variables) {
    if (v.id.empty()) throw Error(ErrorCode::empty_variable_id, "variable id must be nonempty");
    if (!ids.insert(v.id).second)
      throw Error(ErrorCode::duplicate_variable_id, "duplicate variable id '" + v.id + "'");
    if (v.symbol && !symbols.insert(*v.symbol).second)
      throw Error(ErrorCode::duplicate_symbol,
                  "symbol '" + *v.symbol + "' is used by more than one variable");
  }
}

bool by_id(const Variable& a, const Variable& b) { return a.id < b.id; }

}  // namespace

// ---------------------------------------------------------------------------
// CausalDiagram

CausalDiagram build_diagram(std::string name, std::vector<Variable> variables,
                            std::vector<CausalEdge> edges) {
  check_variables(variables);
  std::sort(variables.begin(), variables.end(), by_id);

  CausalDiagram d;
  d.name_ = std::move(name);
  for (std::size_t i = 0; i < variables.size(); ++i) d.index_.emplace(variables[i].id, i);

  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const auto& e : edges) {
    for (const auto* end : {&e.from, &e.to}) {
      if (!d.index_.contains(*end))
        throw Error(ErrorCode::dangling_edge_endpoint,
                    "edge " + e.from + " -> " + e.to + " references unknown variable '" + *end + "'");
    }
    if (e.from == e.to)
      throw Error(ErrorCode::self_loop, "self-loop on variable '" + e.from + "'");
    if (!seen.emplace(e.from, e.to).second)
      throw Error(ErrorCode::duplicate_edge, "duplicate edge " + e.from + " -> " + e.to);
  }
  std::sort(edges.begin(), edges.end(), [](const CausalEdge& a, const CausalEdge& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });

  d.variables_ = std::move(variables);
  d.edges_ = std::move(edges);
  d.out_.assign(d.variables_.size(), {});
  for (std::size_t i = 0; i < d.edges_.size(); ++i)
    d.out_[d.index_.find(d.edges_[i].from)->second].push_back(i);
  return d;
}

bool CausalDiagram::contains(std::string_view id) const { return index_.contains(id); }

const Variable* CausalDiagram::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &variables_[it->second];
}

std::optional<std::size_t> CausalDiagram::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> CausalDiagram::resolve(std::string_view id_or_symbol) const {
  if (contains(id_or_symbol)) return std::string(id_or_symbol);
  for (const auto& v : variables_)
    if (v.symbol && *v.symbol == id_or_symbol) return v.id;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// CausalSkeleton

Link::Link(std::string a, std::string b) : first(std::move(a)), second(std::move(b)) {
  if (second < first) std::swap(first, second);
}

CausalSkeleton build_skeleton(std::string name, std::vector<Variable> variables,
                              std::vector<Link> links) {
  check_variables(variables);
  std::sort(variables.begin(), variables.end(), by_id);

  std::set<std::string_view> ids;
  for (const auto& v : variables) ids.insert(v.id);

  std::set<Link> seen;
  for (const auto& l : links) {
    for (const auto* end : {&l.first, &l.second}) {
      if (!ids.contains(*end))
        throw Error(ErrorCode::dangling_edge_endpoint,
                    "link " + l.first + " -- " + l.second + " references unknown variable '" + *end + "'");
    }
    if (l.first == l.second) throw Error(ErrorCode::self_loop, "self-link on '" + l.first + "'");
    if (!seen.insert(l).second)
      throw Error(ErrorCode::duplicate_edge, "duplicate link " + l.first + " -- " + l.second);
  }

  CausalSkeleton s;
  s.name_ = std::move(name);
  s.variables_ = std::move(variables);
  s.links_.assign(seen.begin(), seen.end());
  return s;
}

bool CausalSkeleton::contains(std::string_view id) const {
  auto it = std::lower_bound(variables_.begin(), variables_.end(), id,
                             [](const Variable& v, std::string_view key) { return v.id < key; });
  return it != variables_.end() && it->id == id;
}

bool CausalSkeleton::has_link(const Link& link) const {
  return std::binary_search(links_.begin(), links_.end(), link);
}

CausalSkeleton skeleton_of(const CausalDiagram& diagram) {
  std::set<Link> links;
  for (const auto& e : diagram.edges()) links.emplace(e.from, e.to);
  return build_skeleton(diagram.name(), diagram.variables(), {links.begin(), links.end()});
}

// ---------------------------------------------------------------------------
// Loops

std::vector<std::string> FeedbackLoop::path() const {
  std::vector<std::string> ids;
  ids.reserve(cycle.size());
  for (const auto& e : cycle) ids.push_back(e.from);
  return ids;
}

LoopPolarity loop_polarity(std::span<const CausalEdge> cycle) {
  if (cycle.empty()) throw Error(ErrorCode::not_a_cycle, "empty edge list is not a cycle");
  std::set<std::string_view> visited;
  Polarity product = Polarity::positive;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const auto& e = cycle[i];
    const auto& next = cycle[(i + 1) % cycle.size()];
    if (e.from == e.to) throw Error(ErrorCode::not_a_cycle, "self-loop edge in cycle");
    if (e.to != next.from)
      throw Error(ErrorCode::not_a_cycle,
                  "edge " + e.from + " -> " + e.to + " is not followed by an edge leaving " + e.to);
    if (!visited.insert(e.from).second)
      throw Error(ErrorCode::not_a_cycle, "variable '" + e.from + "' is visited twice");
    product = product * e.polarity;
  }
  return product == Polarity::positive ? LoopPolarity::reinforcing : LoopPolarity::balancing;
}

namespace {

// Johnson (1975): circuits rooted at the least vertex of each pass.
class CircuitFinder {
 public:
  CircuitFinder(const CausalDiagram& d, std::size_t cap)
      : d_(d), cap_(cap), blocked_(d.variables().size()), blocked_by_(d.variables().size()) {}

  LoopEnumeration run() {
    const std::size_t n = d_.variables().size();
    for (start_ = 0; start_ < n && !out_.truncated; ++start_) {
      std::fill(blocked_.begin(), blocked_.end(), false);
      for (auto& b : blocked_by_) b.clear();
      circuit(start_);
    }
    return std::move(out_);
  }

 private:
  bool circuit(std::size_t v) {
    bool found = false;
    blocked_[v] = true;
    for (std::size_t ei : d_.out_edges()[v]) {
      if (out_.truncated) return true;
      const std::size_t w = *d_.index_of(d_.edges()[ei].to);
      if (w < start_) continue;
      stack_.push_back(ei);
      if (w == start_) {
        emit();
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
      stack_.pop_back();
    }
    if (found) {
      unblock(v);
    } else {
      for (std::size_t ei : d_.out_edges()[v]) {
        const std::size_t w = *d_.index_of(d_.edges()[ei].to);
        if (w < start_) continue;
        auto& list = blocked_by_[w];
        if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
      }
    }
    return found;
  }

  void unblock(std::size_t u) {
    blocked_[u] = false;
    auto pending = std::move(blocked_by_[u]);
    blocked_by_[u].clear();
    for (std::size_t w : pending)
      if (blocked_[w]) unblock(w);
  }

  void emit() {
    if (out_.loops.size() >= cap_) {
      out_.truncated = true;
      return;
    }
    FeedbackLoop loop;
    for (std::size_t ei : stack_) loop.cycle.push_back(d_.edges()[ei]);
    loop.polarity = loop_polarity(loop.cycle);
    out_.loops.push_back(std::move(loop));
  }

  const CausalDiagram& d_;
  std::size_t cap_;
  std::size_t start_ = 0;
  std::vector<bool> blocked_;
  std::vector<std::vector<std::size_t>> blocked_by_;
  std::vector<std::size_t> stack_;
  LoopEnumeration out_;
};

}  // namespace

LoopEnumeration enumerate_loops(const CausalDiagram& diagram, LoopOptions options) {
  auto result = CircuitFinder(diagram, options.max_cycles).run();
  std::stable_sort(result.loops.begin(), result.loops.end(),
                   [](const FeedbackLoop& a, const FeedbackLoop& b) {
                     if (a.cycle.size() != b.cycle.size()) return a.cycle.size() < b.cycle.size();
                     return a.path() < b.path();
                   });
  return result;
}

}  // namespace causal_econ
