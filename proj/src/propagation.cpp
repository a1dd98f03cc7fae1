#include "causal_econ/propagation.hpp"

#include <algorithm>

namespace causal_econ {

std::string_view to_string(Direction d) { return d == Direction::increase ? "increase" : "decrease"; }

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::increase: return "increase";
    case Outcome::decrease: return "decrease";
    case Outcome::no_effect: return "no_effect";
    case Outcome::indeterminate: return "indeterminate";
  }
  return "unknown";
}

std::vector<std::string> WitnessPath::variables(std::string_view source) const {
  std::vector<std::string> out{std::string(source)};
  for (const auto& e : edges) out.push_back(e.to);
  return out;
}

namespace {

void check_query(const CausalDiagram& d, const Shock& shock, const FrozenSet& frozen) {
  if (!d.contains(shock.variable))
    throw Error(ErrorCode::unknown_variable, "unknown shocked variable '" + shock.variable + "'");
  for (const auto& f : frozen)
    if (!d.contains(f)) throw Error(ErrorCode::unknown_variable, "unknown frozen variable '" + f + "'");
  if (frozen.contains(shock.variable))
    throw Error(ErrorCode::shocked_variable_frozen,
                "shocked variable '" + shock.variable + "' is held constant");
}

Outcome compose(Polarity sign, Direction dir) {
  const bool up = (sign == Polarity::positive) == (dir == Direction::increase);
  return up ? Outcome::increase : Outcome::decrease;
}

class PathSearch {
 public:
  PathSearch(const CausalDiagram& d, std::size_t source, std::size_t target, const FrozenSet& frozen,
             std::size_t budget)
      : d_(d), target_(target), budget_(budget), on_path_(d.variables().size(), false),
        excluded_(d.variables().size(), false), reaches_target_(d.variables().size(), false) {
    for (const auto& f : frozen) excluded_[*d.index_of(f)] = true;
    mark_ancestors();
    on_path_[source] = true;
    visit(source, Polarity::positive);
  }

  std::vector<WitnessPath> take() { return std::move(found_); }

 private:
  // Vertices that can still reach the target without crossing a frozen one.
  void mark_ancestors() {
    if (excluded_[target_]) return;
    std::vector<std::vector<std::size_t>> in(d_.variables().size());
    for (const auto& e : d_.edges()) in[*d_.index_of(e.to)].push_back(*d_.index_of(e.from));
    std::vector<std::size_t> stack{target_};
    reaches_target_[target_] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto u : in[v]) {
        if (!reaches_target_[u] && !excluded_[u]) {
          reaches_target_[u] = true;
          stack.push_back(u);
        }
      }
    }
  }

  void visit(std::size_t v, Polarity sign) {
    if (++explored_ > budget_)
      throw Error(ErrorCode::path_budget_exceeded,
                  "more than " + std::to_string(budget_) + " simple paths explored");
    if (v == target_) {
      WitnessPath w;
      for (auto ei : edges_) w.edges.push_back(d_.edges()[ei]);
      w.sign = sign;
      found_.push_back(std::move(w));
      return;
    }
    for (auto ei : d_.out_edges()[v]) {
      const auto& e = d_.edges()[ei];
      const auto w = *d_.index_of(e.to);
      if (on_path_[w] || excluded_[w] || !reaches_target_[w]) continue;
      on_path_[w] = true;
      edges_.push_back(ei);
      visit(w, sign * e.polarity);
      edges_.pop_back();
      on_path_[w] = false;
    }
  }

  const CausalDiagram& d_;
  std::size_t target_;
  std::size_t budget_;
  std::size_t explored_ = 0;
  std::vector<bool> on_path_;
  std::vector<bool> excluded_;
  std::vector<bool> reaches_target_;
  std::vector<std::size_t> edges_;
  std::vector<WitnessPath> found_;
};

PropagationVerdict propagate_checked(const CausalDiagram& d, const Shock& shock,
                                     const std::string& target, const FrozenSet& frozen,
                                     PropagationOptions options) {
  PropagationVerdict verdict;
  verdict.target = target;

  if (target == shock.variable) {
    verdict.outcome = compose(Polarity::positive, shock.direction);
    verdict.witness_paths.push_back(WitnessPath{});
    return verdict;
  }

  PathSearch search(d, *d.index_of(shock.variable), *d.index_of(target), frozen,
                    options.path_budget);
  verdict.witness_paths = search.take();
  auto& paths = verdict.witness_paths;
  std::sort(paths.begin(), paths.end(), [&](const WitnessPath& a, const WitnessPath& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.variables(shock.variable) < b.variables(shock.variable);
  });

  if (paths.empty()) {
    verdict.outcome = Outcome::no_effect;
    return verdict;
  }
  const bool any_pos = std::any_of(paths.begin(), paths.end(),
                                   [](const auto& p) { return p.sign == Polarity::positive; });
  const bool any_neg = std::any_of(paths.begin(), paths.end(),
                                   [](const auto& p) { return p.sign == Polarity::negative; });
  if (any_pos && any_neg)
    verdict.outcome = Outcome::indeterminate;
  else
    verdict.outcome = compose(any_pos ? Polarity::positive : Polarity::negative, shock.direction);
  return verdict;
}

}  // namespace

PropagationVerdict propagate(const CausalDiagram& diagram, const Shock& shock,
                             std::string_view target, const FrozenSet& frozen,
                             PropagationOptions options) {
  check_query(diagram, shock, frozen);
  if (!diagram.contains(target))
    throw Error(ErrorCode::unknown_variable, "unknown target variable '" + std::string(target) + "'");
  return propagate_checked(diagram, shock, std::string(target), frozen, options);
}

std::map<std::string, PropagationVerdict> propagate_all(const CausalDiagram& diagram,
                                                        const Shock& shock,
                                                        const FrozenSet& frozen,
                                                        PropagationOptions options) {
  check_query(diagram, shock, frozen);
  std::map<std::string, PropagationVerdict> out;
  for (const auto& v : diagram.variables())
    out.emplace(v.id, propagate_checked(diagram, shock, v.id, frozen, options));
  return out;
}

Outcome answer_mcq(const CausalDiagram& diagram, const McqQuestion& question,
                   PropagationOptions options) {
  return propagate(diagram, question.shock, question.target, question.frozen, options).outcome;
}

}  // namespace causal_econ
