#include "causal_econ/fixtures.hpp"

namespace causal_econ::fixtures {

namespace {

constexpr auto pos = Polarity::positive;
constexpr auto neg = Polarity::negative;

Variable var(std::string id, std::string label, std::optional<std::string> symbol = std::nullopt,
             std::optional<std::string> group = std::nullopt) {
  return {std::move(id), std::move(label), std::move(symbol), std::move(group)};
}

}  // namespace

CausalDiagram price_revenue() {
  return build_diagram("price_revenue",
                       {
                           var("price", "Price"),
                           var("marginal_revenue", "Marginal Revenue"),
                           var("sales", "Sales"),
                           var("revenue", "Revenue"),
                       },
                       {
                           {"price", "marginal_revenue", pos},
                           {"marginal_revenue", "revenue", pos},
                           {"price", "sales", neg},
                           {"sales", "revenue", pos},
                       });
}

CausalDiagram national_income_subset() {
  const std::string fin = "financial";
  return build_diagram(
      "national_income_subset",
      {
          var("technology", "Available Technology"),
          var("capital", "Capital", "K"),
          var("labor", "Employed Labor", "L"),
          var("output", "National Output", "Y"),
          var("national_income", "National Income"),
          var("disposable_income", "Disposable Income", "Y-T"),
          var("taxes", "Taxes", "T"),
          var("consumption", "Consumption", "C"),
          var("government_purchases", "Government Purchases", "G"),
          var("public_savings", "Public Savings", std::nullopt, fin),
          var("private_savings", "Private Savings", std::nullopt, fin),
          var("national_savings", "National Savings", "S", fin),
          var("loanable_funds_supply", "Supply of Loanable Funds", std::nullopt, fin),
          var("interest_rate", "Interest Rate", "r", fin),
      },
      {
          {"technology", "output", pos},
          {"capital", "output", pos},
          {"labor", "output", pos},
          {"output", "national_income", pos},
          {"national_income", "disposable_income", pos},
          {"taxes", "disposable_income", neg},
          {"disposable_income", "consumption", pos},
          {"government_purchases", "public_savings", neg},
          {"public_savings", "national_savings", pos},
          {"private_savings", "national_savings", pos},
          {"national_savings", "loanable_funds_supply", pos},
          {"loanable_funds_supply", "interest_rate", neg},
          {"interest_rate", "private_savings", pos},
      });
}

CausalDiagram multiplier() {
  return build_diagram("multiplier",
                       {
                           var("G", "Government Purchases", "G"),
                           var("I", "Planned Investment", "I"),
                           var("T", "Taxes", "T"),
                           var("Y", "National Income", "Y"),
                           var("Y_T", "Disposable Income", "Y-T"),
                           var("C", "Consumption", "C"),
                           var("PE", "Planned Expenditure", "PE"),
                           var("MPC", "Marginal Propensity to Consume", "MPC"),
                       },
                       {
                           {"G", "PE", pos},
                           {"I", "PE", pos},
                           {"T", "Y_T", neg},
                           {"Y", "Y_T", pos},
                           {"Y_T", "C", pos},
                           {"MPC", "C", pos},
                           {"C", "PE", pos},
                           {"PE", "Y", pos},
                       });
}

std::vector<std::string_view> names() {
  return {"price_revenue", "national_income_subset", "multiplier"};
}

std::optional<CausalDiagram> by_name(std::string_view name) {
  if (name == "price_revenue") return price_revenue();
  if (name == "national_income_subset") return national_income_subset();
  if (name == "multiplier") return multiplier();
  return std::nullopt;
}

}  // namespace causal_econ::fixtures
