#include <doctest.h>

#include "causal_econ/fixtures.hpp"
#include "causal_econ/propagation.hpp"

using namespace causal_econ;

namespace {

std::vector<std::vector<std::string>> paths_of(const PropagationVerdict& v, std::string_view source) {
  std::vector<std::vector<std::string>> out;
  for (const auto& p : v.witness_paths) out.push_back(p.variables(source));
  return out;
}

}  // namespace

TEST_CASE("multiple-choice keys on the national income model") {
  const auto d = fixtures::national_income_subset();

  SUBCASE("technology up with capital and labor held fixed") {
    const auto v = propagate(d, {"technology", Direction::increase}, "consumption", {"capital", "labor"});
    CHECK(v.outcome == Outcome::increase);
    REQUIRE(v.witness_paths.size() == 1);
    CHECK(paths_of(v, "technology")[0] ==
          std::vector<std::string>{"technology", "output", "national_income", "disposable_income", "consumption"});
  }
  SUBCASE("government purchases up raises the interest rate") {
    CHECK(propagate(d, {"government_purchases", Direction::increase}, "interest_rate").outcome ==
          Outcome::increase);
  }
  SUBCASE("interest rate up raises private savings") {
    CHECK(propagate(d, {"interest_rate", Direction::increase}, "private_savings").outcome == Outcome::increase);
  }
  SUBCASE("government purchases down lowers the interest rate") {
    const auto v = propagate(d, {"government_purchases", Direction::decrease}, "interest_rate");
    CHECK(v.outcome == Outcome::decrease);
    REQUIRE(v.witness_paths.size() == 1);
    CHECK(v.witness_paths[0].sign == Polarity::positive);
  }
  SUBCASE("taxes up") {
    CHECK(propagate(d, {"taxes", Direction::increase}, "disposable_income").outcome == Outcome::decrease);
    CHECK(propagate(d, {"taxes", Direction::increase}, "consumption").outcome == Outcome::decrease);
    CHECK(propagate(d, {"taxes", Direction::increase}, "interest_rate").outcome == Outcome::no_effect);
  }
}

TEST_CASE("price and revenue pull both ways") {
  const auto d = fixtures::price_revenue();
  const auto v = propagate(d, {"price", Direction::increase}, "revenue");
  CHECK(v.outcome == Outcome::indeterminate);
  REQUIRE(v.witness_paths.size() == 2);
  CHECK(v.witness_paths[0].sign != v.witness_paths[1].sign);
  CHECK(paths_of(v, "price")[0] == std::vector<std::string>{"price", "marginal_revenue", "revenue"});
  CHECK(paths_of(v, "price")[1] == std::vector<std::string>{"price", "sales", "revenue"});

  SUBCASE("freezing one channel resolves it") {
    CHECK(propagate(d, {"price", Direction::increase}, "revenue", {"sales"}).outcome == Outcome::increase);
    CHECK(propagate(d, {"price", Direction::increase}, "revenue", {"marginal_revenue"}).outcome ==
          Outcome::decrease);
    CHECK(propagate(d, {"price", Direction::decrease}, "revenue", {"marginal_revenue"}).outcome ==
          Outcome::increase);
  }
  SUBCASE("sales falls") {
    CHECK(propagate(d, {"price", Direction::increase}, "sales").outcome == Outcome::decrease);
  }
}

TEST_CASE("the shocked variable moves with the shock") {
  const auto d = fixtures::price_revenue();
  const auto v = propagate(d, {"sales", Direction::decrease}, "sales");
  CHECK(v.outcome == Outcome::decrease);
  REQUIRE(v.witness_paths.size() == 1);
  CHECK(v.witness_paths[0].edges.empty());
  CHECK(v.witness_paths[0].variables("sales") == std::vector<std::string>{"sales"});
}

TEST_CASE("no path means no effect") {
  const auto d = fixtures::price_revenue();
  const auto v = propagate(d, {"revenue", Direction::increase}, "price");
  CHECK(v.outcome == Outcome::no_effect);
  CHECK(v.witness_paths.empty());
}

TEST_CASE("a frozen target does not move") {
  const auto d = fixtures::price_revenue();
  CHECK(propagate(d, {"price", Direction::increase}, "sales", {"sales"}).outcome == Outcome::no_effect);
}

TEST_CASE("propagation errors") {
  const auto d = fixtures::price_revenue();
  CHECK_THROWS_AS(propagate(d, {"nope", Direction::increase}, "revenue"), Error);
  try {
    propagate(d, {"price", Direction::increase}, "nope");
    FAIL("expected unknown_variable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_variable);
  }
  try {
    propagate(d, {"price", Direction::increase}, "revenue", {"price"});
    FAIL("expected shocked_variable_frozen");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::shocked_variable_frozen);
  }
  try {
    propagate(d, {"price", Direction::increase}, "revenue", {"ghost"});
    FAIL("expected unknown_variable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_variable);
  }
}

TEST_CASE("the path budget stops explosive searches") {
  // complete digraph on 10 vertices has ~10^6 simple paths between two nodes
  std::vector<Variable> vs;
  std::vector<CausalEdge> es;
  for (int i = 0; i < 10; ++i) vs.push_back({"n" + std::to_string(i), "", {}, {}});
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      if (i != j) es.push_back({vs[i].id, vs[j].id, Polarity::positive});
  const auto d = build_diagram("k10", vs, es);
  try {
    propagate(d, {"n0", Direction::increase}, "n9", {}, {1000});
    FAIL("expected path_budget_exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::path_budget_exceeded);
  }
  // a small budget is enough once most vertices are frozen
  const auto v = propagate(d, {"n0", Direction::increase}, "n9", {"n2", "n3", "n4", "n5", "n6", "n7", "n8"}, {1000});
  CHECK(v.outcome == Outcome::increase);
  CHECK(v.witness_paths.size() == 2);
}

TEST_CASE("propagate_all on the multiplier diagram") {
  const auto d = fixtures::multiplier();
  const auto all = propagate_all(d, {"G", Direction::increase});
  CHECK(all.size() == 8);
  for (const char* up : {"G", "PE", "Y", "Y_T", "C"}) CHECK(all.at(up).outcome == Outcome::increase);
  for (const char* none : {"T", "I", "MPC"}) CHECK(all.at(none).outcome == Outcome::no_effect);
  CHECK(paths_of(all.at("Y"), "G")[0] == std::vector<std::string>{"G", "PE", "Y"});

  const auto taxes = propagate_all(d, {"T", Direction::increase});
  for (const char* down : {"Y_T", "C", "PE", "Y"}) CHECK(taxes.at(down).outcome == Outcome::decrease);
}

TEST_CASE("answer_mcq") {
  const auto d = fixtures::national_income_subset();
  CHECK(answer_mcq(d, {{"technology", Direction::increase}, "consumption", {"capital", "labor"}}) ==
        Outcome::increase);
  CHECK(to_string(Outcome::no_effect) == "no_effect");
  CHECK(to_string(Outcome::indeterminate) == "indeterminate");
}
