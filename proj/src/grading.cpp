#include "causal_econ/grading.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace causal_econ {

double percent(int correct, int total) {
  if (total == 0) return 100.0;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

ScoreReport report_from_counts(std::string student, int total, int direction_correct,
                               int polarity_correct) {
  if (total < 0 || direction_correct < 0 || polarity_correct < 0 || direction_correct > total ||
      polarity_correct > total)
    throw Error(ErrorCode::invalid_parameter, "correct counts must lie in [0, total]");
  return {std::move(student), total, direction_correct, polarity_correct,
          percent(direction_correct, total), percent(polarity_correct, total), std::nullopt};
}

ScoreReport grade(const CausalDiagram& reference, const AnswerSheet& sheet) {
  const auto skeleton = skeleton_of(reference);

  std::map<Link, const LinkAnswer*> answers;
  for (const auto& a : sheet.answers) {
    if (!skeleton.has_link(a.link))
      throw Error(ErrorCode::skeleton_mismatch, "sheet answers link " + a.link.first + " -- " +
                                                    a.link.second + ", which '" + reference.name() +
                                                    "' does not have");
    if (!answers.emplace(a.link, &a).second)
      throw Error(ErrorCode::duplicate_answer,
                  "link " + a.link.first + " -- " + a.link.second + " answered twice");
  }

  // Reference edges per link: [0] first -> second, [1] second -> first.
  std::map<Link, std::array<const CausalEdge*, 2>> edges;
  for (const auto& e : reference.edges()) {
    Link link(e.from, e.to);
    edges[link][e.from == link.first ? 0 : 1] = &e;
  }

  ScoreReport r;
  r.student = sheet.student;
  r.total_links = static_cast<int>(skeleton.links().size());
  for (const auto& link : skeleton.links()) {
    auto it = answers.find(link);
    if (it == answers.end()) continue;
    const auto& a = *it->second;
    const auto& pair = edges.at(link);

    if ((a.orientation == Orientation::forward && pair[0]) ||
        (a.orientation == Orientation::backward && pair[1]))
      ++r.direction_correct;

    if (a.polarity != ClaimedPolarity::blank) {
      const auto claimed =
          a.polarity == ClaimedPolarity::positive ? Polarity::positive : Polarity::negative;
      // Judged without regard to the claimed orientation.
      if ((pair[0] && pair[0]->polarity == claimed) || (pair[1] && pair[1]->polarity == claimed))
        ++r.polarity_correct;
    }
  }
  r.direction_pct = percent(r.direction_correct, r.total_links);
  r.polarity_pct = percent(r.polarity_correct, r.total_links);

  if (sheet.loop_claim) {
    const auto loops = enumerate_loops(reference, {.max_cycles = 2});
    if (loops.loops.size() == 1) r.loop_claim_correct = *sheet.loop_claim == loops.loops.front().polarity;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Statistics

ClassStats class_stats(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::empty_input, "statistics need at least one value");

  ClassStats s;
  s.n = static_cast<int>(values.size());

  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double delta = values[i] - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (values[i] - mean);
  }
  s.mean = mean;

  std::vector<double> work(values.begin(), values.end());
  const auto mid = work.size() / 2;
  std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(mid), work.end());
  const double upper = work[mid];
  if (work.size() % 2 == 1) {
    s.median = upper;
  } else {
    const double lower = *std::max_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(mid));
    s.median = (lower + upper) / 2.0;
  }

  if (s.n >= 2) {
    s.sd = std::sqrt(m2 / static_cast<double>(s.n - 1));
    if (s.mean != 0.0) s.cv = *s.sd / s.mean;
  }
  return s;
}

namespace {

double field_value(const ScoreReport& r, ScoreField field) {
  switch (field) {
    case ScoreField::direction_pct: return r.direction_pct;
    case ScoreField::polarity_pct: return r.polarity_pct;
    case ScoreField::direction_count: return r.direction_correct;
    case ScoreField::polarity_count: return r.polarity_correct;
  }
  return 0.0;
}

}  // namespace

ClassStats class_stats(std::span<const ScoreReport> reports, ScoreField field) {
  std::vector<double> values;
  values.reserve(reports.size());
  for (const auto& r : reports) values.push_back(field_value(r, field));
  return class_stats(values);
}

std::vector<ActivityStats> activity_stats(std::span<const Activity> activities) {
  std::vector<ActivityStats> out;
  for (const auto& a : activities)
    out.push_back({a.name, class_stats(a.reports, ScoreField::direction_pct),
                   class_stats(a.reports, ScoreField::polarity_pct)});
  return out;
}

CohortTable cohort_track(std::span<const Activity> activities) {
  if (activities.empty()) throw Error(ErrorCode::empty_input, "no activities given");

  std::vector<std::map<std::string, const ScoreReport*>> by_student(activities.size());
  for (std::size_t i = 0; i < activities.size(); ++i)
    for (const auto& r : activities[i].reports) by_student[i].emplace(r.student, &r);

  CohortTable table;
  for (const auto& r : activities.front().reports) {
    if (table.rows.size() > 0 &&
        std::any_of(table.rows.begin(), table.rows.end(),
                    [&](const CohortRow& row) { return row.student == r.student; }))
      continue;
    CohortRow row{r.student, {}};
    bool everywhere = true;
    for (const auto& index : by_student) {
      auto it = index.find(r.student);
      if (it == index.end()) {
        everywhere = false;
        break;
      }
      row.results.push_back(*it->second);
    }
    if (everywhere) table.rows.push_back(std::move(row));
  }
  if (table.rows.empty())
    throw Error(ErrorCode::no_common_students, "no student took part in every activity");

  for (std::size_t i = 0; i < activities.size(); ++i) {
    std::vector<ScoreReport> column;
    for (const auto& row : table.rows) column.push_back(row.results[i]);
    table.stats.push_back({activities[i].name, class_stats(column, ScoreField::direction_pct),
                           class_stats(column, ScoreField::polarity_pct)});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Display

namespace {

std::string hundredths(long long h) {
  const bool negative = h < 0;
  if (negative) h = -h;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", negative ? "-" : "", h / 100, h % 100);
  return buf;
}

std::string opt2(const std::optional<double>& v) { return v ? format_fixed2(*v) : std::string(); }

std::string pct_cell(const std::string& v) { return v.empty() ? v : v + "%"; }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> csv_split(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string loop_cell(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : "";
}

struct Footer {
  std::string label;
  std::string dir_count, pol_count, dir_pct, pol_pct;
};

std::vector<Footer> footers(std::span<const ScoreReport> reports) {
  if (reports.empty()) return {};
  const auto dc = class_stats(reports, ScoreField::direction_count);
  const auto pc = class_stats(reports, ScoreField::polarity_count);
  const auto dp = class_stats(reports, ScoreField::direction_pct);
  const auto pp = class_stats(reports, ScoreField::polarity_pct);
  return {
      {"Mean", format_fixed2(dc.mean), format_fixed2(pc.mean), format_fixed2(dp.mean), format_fixed2(pp.mean)},
      {"Median", format_fixed2(dc.median), format_fixed2(pc.median), format_fixed2(dp.median),
       format_fixed2(pp.median)},
      {"St Deviation", opt2(dc.sd), opt2(pc.sd), opt2(dp.sd), opt2(pp.sd)},
      {"CV", "", "", opt2(dp.cv), opt2(pp.cv)},
  };
}

}  // namespace

std::string format_percent(int correct, int total) {
  if (total == 0) return "100.00";
  // round(10000 * correct / total), half-up, in integers
  const long long num = 20000LL * correct + total;
  const long long den = 2LL * total;
  return hundredths(num / den);
}

std::string format_fixed2(double value) {
  const double scaled = std::abs(value) * 100.0;
  // The nudge keeps exact binary halves such as 40.625 rounding up.
  auto h = static_cast<long long>(std::floor(scaled * (1.0 + 1e-12) + 0.5));
  return hundredths(value < 0 ? -h : h);
}

std::string render_report(std::span<const ScoreReport> reports, ReportFormat format) {
  std::ostringstream os;
  const auto foot = footers(reports);

  if (format == ReportFormat::csv) {
    os << "student,total,dir_correct,dir_pct,pol_correct,pol_pct,loop_correct\n";
    for (const auto& r : reports)
      os << csv_field(r.student) << ',' << r.total_links << ',' << r.direction_correct << ','
         << format_percent(r.direction_correct, r.total_links) << ',' << r.polarity_correct << ','
         << format_percent(r.polarity_correct, r.total_links) << ',' << loop_cell(r.loop_claim_correct)
         << '\n';
    for (const auto& f : foot)
      os << '#' << f.label << ",," << f.dir_count << ',' << f.dir_pct << ',' << f.pol_count << ','
         << f.pol_pct << ",\n";
    return os.str();
  }

  std::size_t width = 12;
  for (const auto& r : reports) width = std::max(width, r.student.size());
  const auto row = [&](std::string_view a, std::string_view b, std::string_view c, std::string_view d,
                       std::string_view e, std::string_view f) {
    os << std::left << std::setw(static_cast<int>(width)) << a << std::right;
    for (auto cell : {b, c, d, e}) os << "  " << std::setw(10) << cell;
    if (!f.empty()) os << "  " << std::setw(6) << f;
    os << '\n';
  };
  const bool any_loop = std::any_of(reports.begin(), reports.end(),
                                    [](const auto& r) { return r.loop_claim_correct.has_value(); });
  row("", "Correct", "answers", "Percentage", "correct", "");
  row("Student", "Direction", "Polarity", "Direction", "Polarity", any_loop ? "Loop" : "");
  for (const auto& r : reports) {
    const auto loop = any_loop ? (r.loop_claim_correct ? (*r.loop_claim_correct ? "yes" : "no") : "-") : "";
    row(r.student, std::to_string(r.direction_correct), std::to_string(r.polarity_correct),
        format_percent(r.direction_correct, r.total_links) + "%",
        format_percent(r.polarity_correct, r.total_links) + "%", loop);
  }
  for (const auto& f : foot) {
    const bool is_cv = f.label == "CV";
    row(f.label, f.dir_count, f.pol_count, is_cv ? f.dir_pct : pct_cell(f.dir_pct),
        is_cv ? f.pol_pct : pct_cell(f.pol_pct), "");
  }
  return os.str();
}

std::string render_activity_stats(std::span<const ActivityStats> stats) {
  std::ostringstream os;
  std::size_t width = 10;
  for (const auto& s : stats) width = std::max(width, s.name.size());
  const auto row = [&](std::string_view name, std::array<std::string, 6> cells) {
    os << std::left << std::setw(static_cast<int>(width)) << name << std::right;
    for (const auto& c : cells) os << "  " << std::setw(8) << c;
    os << '\n';
  };
  row("", {"Direction", "", "", "Polarity", "", ""});
  row("Activity", {"Mean", "SD", "CV", "Mean", "SD", "CV"});
  for (const auto& s : stats)
    row(s.name, {pct_cell(format_fixed2(s.direction.mean)), pct_cell(opt2(s.direction.sd)),
                 opt2(s.direction.cv), pct_cell(format_fixed2(s.polarity.mean)),
                 pct_cell(opt2(s.polarity.sd)), opt2(s.polarity.cv)});
  return os.str();
}

std::string render_cohort(const CohortTable& table, std::span<const std::string> activity_names) {
  std::ostringstream os;
  std::size_t width = 10;
  for (const auto& r : table.rows) width = std::max(width, r.student.size());
  const auto row = [&](std::string_view name, const std::vector<std::string>& cells) {
    os << std::left << std::setw(static_cast<int>(width)) << name << std::right;
    for (const auto& c : cells) os << "  " << std::setw(9) << c;
    os << '\n';
  };

  std::vector<std::string> head1, head2;
  for (const auto& n : activity_names) {
    head1.push_back(n);
    head1.push_back("");
    head2.push_back("Direction");
    head2.push_back("Polarity");
  }
  row("", head1);
  row("Student", head2);
  for (const auto& r : table.rows) {
    std::vector<std::string> cells;
    for (const auto& s : r.results) {
      cells.push_back(format_percent(s.direction_correct, s.total_links) + "%");
      cells.push_back(format_percent(s.polarity_correct, s.total_links) + "%");
    }
    row(r.student, cells);
  }
  std::vector<std::string> mean, median, sd, cv;
  for (const auto& s : table.stats) {
    for (const auto* c : {&s.direction, &s.polarity}) {
      mean.push_back(pct_cell(format_fixed2(c->mean)));
      median.push_back(pct_cell(format_fixed2(c->median)));
      sd.push_back(pct_cell(opt2(c->sd)));
      cv.push_back(opt2(c->cv));
    }
  }
  row("Mean", mean);
  row("Median", median);
  row("St. Dev.", sd);
  row("CV", cv);
  return os.str();
}

std::vector<ScoreReport> read_report_csv(std::string_view text) {
  std::vector<ScoreReport> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto f = csv_split(line);
    if (header) {
      header = false;
      if (f.size() < 7 || f[0] != "student")
        throw Error(ErrorCode::parse_error, "line 1: expected the score CSV header");
      continue;
    }
    if (f.size() != 7)
      throw Error(ErrorCode::parse_error,
                  "line " + std::to_string(number) + ": expected 7 fields, got " + std::to_string(f.size()));
    try {
      auto r = report_from_counts(f[0], std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[4]));
      if (f[6] == "true") r.loop_claim_correct = true;
      if (f[6] == "false") r.loop_claim_correct = false;
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::parse_error, "line " + std::to_string(number) + ": malformed number");
    }
  }
  if (header) throw Error(ErrorCode::parse_error, "missing score CSV header");
  return out;
}

}  // namespace causal_econ
