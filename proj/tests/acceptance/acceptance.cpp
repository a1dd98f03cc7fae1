// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "causal_econ/fixtures.hpp"
#include "causal_econ/grading.hpp"
#include "causal_econ/multiplier.hpp"
#include "causal_econ/propagation.hpp"
#include "causal_econ/text_formats.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "tables.hpp"

using namespace causal_econ;
namespace fs = std::filesystem;

namespace {

// Collects the first few mismatches for the report line.
struct Check {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (notes.size() < 3) notes.push_back(what);
  }
  template <typename A, typename B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (got == want) return;
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want;
    expect(false, os.str());
  }
};

struct Criterion {
  std::string name;
  std::optional<double> budget_ms;
  std::function<void(Check&)> body;
};

// ---------------------------------------------------------------------------

void answer_keys(Check& c) {
  const auto d = fixtures::national_income_subset();
  const auto outcome = [&](const char* var, Direction dir, const char* target, FrozenSet frozen = {}) {
    return std::string(to_string(propagate(d, {var, dir}, target, frozen).outcome));
  };
  c.equal(outcome("technology", Direction::increase, "consumption", {"capital", "labor"}), "increase", "Q1");
  c.equal(outcome("government_purchases", Direction::increase, "interest_rate"), "increase", "Q2");
  c.equal(outcome("interest_rate", Direction::increase, "private_savings"), "increase", "Q3");
  c.equal(outcome("government_purchases", Direction::decrease, "interest_rate"), "decrease", "G down");
}

void ambiguity(Check& c) {
  const auto v = propagate(fixtures::price_revenue(), {"price", Direction::increase}, "revenue");
  c.equal(to_string(v.outcome), "indeterminate", "outcome");
  c.equal(v.witness_paths.size(), 2u, "witness count");
  if (v.witness_paths.size() == 2) c.expect(v.witness_paths[0].sign != v.witness_paths[1].sign, "opposite signs");
}

void loop_structure(Check& c) {
  const auto d = fixtures::multiplier();
  const auto loops = enumerate_loops(d);
  c.equal(loops.loops.size(), 1u, "loop count");
  if (loops.loops.size() != 1) return;
  c.equal(to_string(loops.loops[0].polarity), "reinforcing", "polarity");
  c.equal(loops.loops[0].cycle.size(), 4u, "loop length");
  for (const auto& flipped : loops.loops[0].cycle) {
    auto edges = d.edges();
    for (auto& e : edges)
      if (e.from == flipped.from && e.to == flipped.to) e.polarity = flip(e.polarity);
    const auto changed = enumerate_loops(build_diagram(d.name(), d.variables(), edges));
    c.expect(changed.loops.size() == 1 && changed.loops[0].polarity == LoopPolarity::balancing,
             "flipping " + flipped.from + "->" + flipped.to);
  }
}

void multiplier_math(Check& c) {
  c.expect(std::abs(g_multiplier(0.8) - 5.0) <= 1e-12 * 5.0, "g(0.8) = 5");
  c.expect(std::abs(t_multiplier(0.8) - 4.0) <= 1e-12 * 4.0, "t(0.8) = 4");
  for (int k = 1; k <= 19; ++k) {
    const double mpc = k * 0.05;
    const auto g = trace_g({mpc, 1.0, 0.0}, 200);
    const auto t = trace_t({mpc, 0.0, 1.0}, 200);
    std::ostringstream at;
    at << "mpc " << mpc;
    const double g_gap = std::abs(g.cumulative() - g.closed_form_total) / g.closed_form_total;
    const double t_gap = std::abs(t.cumulative() - t.closed_form_total) / t.closed_form_total;
    std::ostringstream gap;
    gap << at.str() << " relative gap " << std::setprecision(3) << g_gap << " > 1e-9";
    c.expect(g_gap <= 1e-9, "g " + gap.str());
    c.expect(t_gap <= 1e-9, "t " + at.str());
    c.expect(std::abs(g_multiplier(mpc) - t_multiplier(mpc) - 1.0) <= 1e-12, "g - t = 1 at " + at.str());
  }
}

std::vector<ScoreReport> reports_of(const tables::Table& t) {
  std::vector<ScoreReport> out;
  int i = 0;
  for (const auto& r : t.rows) out.push_back(report_from_counts("S" + std::to_string(++i), t.links, r.direction, r.polarity));
  return out;
}

void grading_regression(Check& c) {
  const tables::Table* ts[] = {&tables::activity1, &tables::activity2, &tables::activity3};
  std::vector<Activity> acts;
  for (int a = 0; a < 3; ++a) {
    const auto& t = *ts[a];
    const auto tag = "activity " + std::to_string(a + 1);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const auto row = tag + " row " + std::to_string(i + 1);
      c.equal(format_percent(t.rows[i].direction, t.links) + "%", t.rows[i].direction_pct + std::string("%"), row);
      c.equal(format_percent(t.rows[i].polarity, t.links) + "%", t.rows[i].polarity_pct + std::string("%"), row);
    }
    const auto reports = reports_of(t);
    const auto dir = class_stats(reports, ScoreField::direction_pct);
    const auto pol = class_stats(reports, ScoreField::polarity_pct);
    c.equal(format_fixed2(dir.mean), t.direction_pct.mean, tag + " direction mean");
    c.equal(format_fixed2(dir.median), t.direction_pct.median, tag + " direction median");
    c.equal(format_fixed2(*dir.sd), t.direction_pct.sd, tag + " direction sd");
    c.equal(format_fixed2(pol.mean), t.polarity_pct.mean, tag + " polarity mean");
    c.equal(format_fixed2(pol.median), t.polarity_pct.median, tag + " polarity median");
    c.equal(format_fixed2(*pol.sd), t.polarity_pct.sd, tag + " polarity sd");
    acts.push_back({tag, reports});
  }

  const auto first = class_stats(reports_of(tables::activity1), ScoreField::direction_pct);
  c.equal(format_fixed2(*first.cv), "0.87", "activity 1 direction cv");

  const auto summary = activity_stats(acts);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& w = tables::summary[i];
    const auto tag = "summary row " + std::to_string(i + 1);
    c.equal(format_fixed2(summary[i].direction.mean), w.dir_mean, tag);
    c.equal(format_fixed2(*summary[i].direction.sd), w.dir_sd, tag);
    c.equal(format_fixed2(*summary[i].direction.cv), w.dir_cv, tag);
    c.equal(format_fixed2(summary[i].polarity.mean), w.pol_mean, tag);
    c.equal(format_fixed2(*summary[i].polarity.sd), w.pol_sd, tag);
    c.equal(format_fixed2(*summary[i].polarity.cv), w.pol_cv, tag);
  }

  // the ten students present in every activity, in first-activity order
  std::vector<Activity> named(3);
  for (int a = 0; a < 3; ++a) {
    named[a].name = acts[a].name;
    for (std::size_t row = 0; row < ts[a]->rows.size(); ++row) {
      std::string name = "A" + std::to_string(a) + "-" + std::to_string(row);
      for (std::size_t p = 0; p < tables::persistent.size(); ++p) {
        const auto& m = tables::persistent[p];
        if ((a == 0 ? m.a1 : a == 1 ? m.a2 : m.a3) == static_cast<int>(row)) name = "P" + std::to_string(p);
      }
      auto r = acts[a].reports[row];
      r.student = name;
      named[a].reports.push_back(r);
    }
  }
  const auto cohort = cohort_track(named);
  c.equal(cohort.rows.size(), 10u, "cohort size");
  for (std::size_t i = 0; i < cohort.rows.size() && i < 10; ++i)
    for (int a = 0; a < 3; ++a) {
      const auto& s = cohort.rows[i].results[a];
      c.equal(format_percent(s.direction_correct, s.total_links), tables::cohort_rows[i].cells[2 * a], "cohort cell");
      c.equal(format_percent(s.polarity_correct, s.total_links), tables::cohort_rows[i].cells[2 * a + 1], "cohort cell");
    }
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 2; ++k) {
      const auto& s = k == 0 ? cohort.stats[a].direction : cohort.stats[a].polarity;
      const int col = 2 * a + k;
      c.equal(format_fixed2(s.mean), tables::cohort_footer[0][col], "cohort mean");
      c.equal(format_fixed2(s.median), tables::cohort_footer[1][col], "cohort median");
      c.equal(format_fixed2(*s.sd), tables::cohort_footer[2][col], "cohort sd");
      c.equal(format_fixed2(*s.cv), tables::cohort_footer[3][col], "cohort cv");
    }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool span_in_bounds(const SourceSpan& span, const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (lines.empty()) return span.line == 1 && span.column == 1;
  if (span.line < 1 || span.line > static_cast<int>(lines.size())) return false;
  return span.column >= 1 && span.column <= static_cast<int>(lines[span.line - 1].size()) + 1 && span.length >= 1;
}

void parser(Check& c) {
  for (auto name : fixtures::names()) {
    const auto d = *fixtures::by_name(name);
    const auto text = serialize_diagram(d);
    const auto back = parse_diagram(text);
    c.expect(back.ok() && *back.value == d, "fixture " + std::string(name));
    const auto file = slurp(fs::path(CAUSAL_ECON_SOURCE_DIR) / "fixtures" / (std::string(name) + ".cdg"));
    c.expect(file == text, "shipped file " + std::string(name));
  }
  gen::Rng rng(20240601);
  for (int i = 0; i < 1000; ++i) {
    const auto d = gen::diagram(rng, {1, 20, 0.0, 0.3, true});
    const auto text = serialize_diagram(d);
    const auto back = parse_diagram(text);
    c.expect(back.ok() && *back.value == d && serialize_diagram(*back.value) == text,
             "random diagram " + std::to_string(i));
  }
  int files = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(CAUSAL_ECON_SOURCE_DIR) / "tests/acceptance/malformed")) {
    ++files;
    const auto text = slurp(entry.path());
    const auto r = parse_diagram(text);
    const auto name = entry.path().filename().string();
    c.expect(!r.ok(), name + " parsed");
    c.expect(!r.diagnostics.empty(), name + " has no diagnostics");
    for (const auto& d : r.diagnostics) c.expect(span_in_bounds(d.span, text), name + " span out of bounds");
  }
  c.equal(files, 20, "malformed corpus size");
}

void oracle_equivalence(Check& c) {
  gen::Rng rng(8128);
  for (int i = 0; i < 500; ++i) {
    const auto d = gen::diagram(rng, {1, 8});
    const auto tag = "instance " + std::to_string(i);
    const auto loops = enumerate_loops(d);
    const auto cycles = oracle::all_cycles(d);
    bool same = !loops.truncated && loops.loops.size() == cycles.size();
    for (std::size_t k = 0; same && k < cycles.size(); ++k)
      same = loops.loops[k].path() == cycles[k].vertices &&
             (loops.loops[k].polarity == LoopPolarity::reinforcing) == cycles[k].reinforcing;
    c.expect(same, tag + " loops");

    for (const auto& source : d.variables()) {
      FrozenSet frozen;
      std::set<std::string> frozen_plain;
      for (const auto& v : d.variables())
        if (v.id != source.id && gen::coin(rng, 0.15)) {
          frozen.insert(v.id);
          frozen_plain.insert(v.id);
        }
      const auto dir = gen::coin(rng) ? Direction::increase : Direction::decrease;
      for (const auto& target : d.variables()) {
        const auto v = propagate(d, {source.id, dir}, target.id, frozen);
        const auto paths = oracle::all_paths(d, source.id, target.id, frozen_plain);
        bool agree = v.outcome == oracle::outcome(paths, dir) && v.witness_paths.size() == paths.size();
        for (std::size_t k = 0; agree && k < paths.size(); ++k)
          agree = v.witness_paths[k].variables(source.id) == paths[k].vertices;
        c.expect(agree, tag + " " + source.id + " -> " + target.id);
      }
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"answer-key reproduction", 100.0, answer_keys},
      {"ambiguity semantics", std::nullopt, ambiguity},
      {"loop structure and parity", std::nullopt, loop_structure},
      {"multiplier math", 50.0, multiplier_math},
      {"grading regression", std::nullopt, grading_regression},
      {"parser round trip and diagnostics", 1000.0, parser},
      {"oracle equivalence", std::nullopt, oracle_equivalence},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("threw: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (cr.budget_ms && ms > *cr.budget_ms) {
      std::ostringstream os;
      os << "took " << ms << " ms, budget " << *cr.budget_ms << " ms";
      check.expect(false, os.str());
    }
    const bool ok = check.failures == 0;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << std::left << std::setw(36) << cr.name << std::right << std::fixed
              << std::setprecision(1) << std::setw(9) << ms << " ms";
    if (!ok) {
      std::cout << "  " << check.failures << " mismatch(es):";
      for (const auto& n : check.notes) std::cout << " [" << n << "]";
    }
    std::cout << '\n';
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criterion(s) failed" : "acceptance: all criteria pass")
            << '\n';
  return failed ? 1 : 0;
}
