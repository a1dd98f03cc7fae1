#include <doctest.h>

#include "causal_econ/causal_core.hpp"
#include "causal_econ/fixtures.hpp"

using namespace causal_econ;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::io_error;
}

std::vector<Variable> vars(std::initializer_list<const char*> ids) {
  std::vector<Variable> out;
  for (auto id : ids) out.push_back({id, id, {}, {}});
  return out;
}

}  // namespace

TEST_CASE("polarity algebra") {
  CHECK(Polarity::positive * Polarity::positive == Polarity::positive);
  CHECK(Polarity::negative * Polarity::negative == Polarity::positive);
  CHECK(Polarity::positive * Polarity::negative == Polarity::negative);
  CHECK(Polarity::negative * Polarity::positive == Polarity::negative);
  CHECK(flip(Polarity::positive) == Polarity::negative);
  CHECK(sign_char(Polarity::negative) == "-");
}

TEST_CASE("build_diagram rejects malformed graphs") {
  CHECK(code_of([] { build_diagram("d", vars({"a", "a"}), {}); }) == ErrorCode::duplicate_variable_id);
  CHECK(code_of([] { build_diagram("d", vars({""}), {}); }) == ErrorCode::empty_variable_id);
  CHECK(code_of([] { build_diagram("d", vars({"a"}), {{"a", "b", Polarity::positive}}); }) ==
        ErrorCode::dangling_edge_endpoint);
  CHECK(code_of([] { build_diagram("d", vars({"a"}), {{"a", "a", Polarity::negative}}); }) ==
        ErrorCode::self_loop);
  CHECK(code_of([] {
          build_diagram("d", vars({"a", "b"}), {{"a", "b", Polarity::positive}, {"a", "b", Polarity::negative}});
        }) == ErrorCode::duplicate_edge);
  CHECK(code_of([] {
          build_diagram("d", {{"a", "A", "x", {}}, {"b", "B", "x", {}}}, {});
        }) == ErrorCode::duplicate_symbol);
}

TEST_CASE("opposite edges between the same pair are allowed") {
  const auto d = build_diagram("d", vars({"a", "b"}), {{"a", "b", Polarity::positive}, {"b", "a", Polarity::negative}});
  CHECK(d.edges().size() == 2);
  CHECK(skeleton_of(d).links().size() == 1);
}

TEST_CASE("variables and edges come back in canonical order") {
  const auto d = build_diagram("d", vars({"c", "a", "b"}),
                               {{"c", "a", Polarity::positive}, {"a", "c", Polarity::negative}, {"a", "b", Polarity::positive}});
  REQUIRE(d.variables().size() == 3);
  CHECK(d.variables()[0].id == "a");
  CHECK(d.variables()[2].id == "c");
  CHECK(d.edges()[0].to == "b");
  CHECK(d.edges()[1].to == "c");
  CHECK(d.edges()[2].from == "c");
}

TEST_CASE("resolve accepts ids and symbols") {
  const auto d = fixtures::multiplier();
  CHECK(d.resolve("Y_T") == "Y_T");
  CHECK(d.resolve("Y-T") == "Y_T");
  CHECK_FALSE(d.resolve("nope"));
  const auto ni = fixtures::national_income_subset();
  CHECK(ni.resolve("K") == "capital");
  CHECK(ni.resolve("r") == "interest_rate");
}

TEST_CASE("skeleton drops direction and polarity") {
  const auto s = skeleton_of(fixtures::multiplier());
  CHECK(s.name() == "multiplier");
  CHECK(s.variables().size() == 8);
  CHECK(s.links().size() == 8);
  CHECK(s.has_link(Link("PE", "C")));
  CHECK(s.has_link(Link("C", "PE")));
  CHECK_FALSE(s.has_link(Link("G", "Y")));
  CHECK(Link("b", "a").first == "a");
}

TEST_CASE("loop polarity is edge-sign parity") {
  const std::vector<CausalEdge> pos = {{"a", "b", Polarity::negative}, {"b", "a", Polarity::negative}};
  const std::vector<CausalEdge> neg = {{"a", "b", Polarity::positive}, {"b", "a", Polarity::negative}};
  CHECK(loop_polarity(pos) == LoopPolarity::reinforcing);
  CHECK(loop_polarity(neg) == LoopPolarity::balancing);
  const std::vector<CausalEdge> open = {{"a", "b", Polarity::positive}, {"b", "c", Polarity::positive}};
  CHECK(code_of([&] { loop_polarity(open); }) == ErrorCode::not_a_cycle);
  CHECK(code_of([] { loop_polarity({}); }) == ErrorCode::not_a_cycle);
}

TEST_CASE("fixture loops") {
  CHECK(enumerate_loops(fixtures::price_revenue()).loops.empty());

  const auto m = enumerate_loops(fixtures::multiplier());
  REQUIRE(m.loops.size() == 1);
  CHECK_FALSE(m.truncated);
  CHECK(m.loops[0].polarity == LoopPolarity::reinforcing);
  CHECK(m.loops[0].path() == std::vector<std::string>{"C", "PE", "Y", "Y_T"});

  const auto ni = enumerate_loops(fixtures::national_income_subset());
  REQUIRE(ni.loops.size() == 1);
  CHECK(ni.loops[0].polarity == LoopPolarity::balancing);
  CHECK(ni.loops[0].path() ==
        std::vector<std::string>{"interest_rate", "private_savings", "national_savings", "loanable_funds_supply"});
}

TEST_CASE("loops sort by length then ids, and the cap truncates") {
  // complete digraph on 4 vertices: 6 two-cycles, 8 three-cycles, 6 four-cycles
  std::vector<CausalEdge> edges;
  const char* ids[] = {"a", "b", "c", "d"};
  for (auto x : ids)
    for (auto y : ids)
      if (std::string(x) != y) edges.push_back({x, y, Polarity::positive});
  const auto d = build_diagram("k4", vars({"a", "b", "c", "d"}), edges);
  const auto all = enumerate_loops(d);
  REQUIRE(all.loops.size() == 20);
  CHECK_FALSE(all.truncated);
  CHECK(all.loops.front().path() == std::vector<std::string>{"a", "b"});
  CHECK(all.loops[6].path() == std::vector<std::string>{"a", "b", "c"});
  CHECK(all.loops.back().path() == std::vector<std::string>{"a", "d", "c", "b"});
  for (std::size_t i = 1; i < all.loops.size(); ++i)
    CHECK(all.loops[i - 1].cycle.size() <= all.loops[i].cycle.size());

  const auto capped = enumerate_loops(d, {5});
  CHECK(capped.truncated);
  CHECK(capped.loops.size() == 5);
}

TEST_CASE("error codes have stable names") {
  CHECK(to_string(ErrorCode::path_budget_exceeded) == "path-budget-exceeded");
  CHECK(to_string(ErrorCode::mpc_out_of_range) == "mpc-out-of-range");
  CHECK(to_string(ErrorCode::not_found) == "not-found");
}
