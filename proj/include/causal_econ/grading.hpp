#pragma once

// Scoring of completed causal skeletons and cohort statistics.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "causal_econ/causal_core.hpp"
#include "causal_econ/text_formats.hpp"

namespace causal_econ {

struct ScoreReport {
  std::string student;
  int total_links = 0;
  int direction_correct = 0;
  int polarity_correct = 0;
  double direction_pct = 0.0;
  double polarity_pct = 0.0;
  std::optional<bool> loop_claim_correct;

  friend bool operator==(const ScoreReport&, const ScoreReport&) = default;
};

/// 100 * correct / total. A reference with no links scores 100.
double percent(int correct, int total);

/// Builds a report from counts alone, as printed in the published tables.
ScoreReport report_from_counts(std::string student, int total, int direction_correct,
                               int polarity_correct);

/// Direction and polarity are judged independently per link; blanks are
/// wrong. Throws skeleton_mismatch if the sheet answers a link the reference
/// does not have.
ScoreReport grade(const CausalDiagram& reference, const AnswerSheet& sheet);

struct ClassStats {
  int n = 0;
  double mean = 0.0;
  double median = 0.0;
  std::optional<double> sd;  // sample (n - 1); absent for n = 1
  std::optional<double> cv;  // sd / mean; absent when mean = 0 or sd absent
};

enum class ScoreField { direction_pct, polarity_pct, direction_count, polarity_count };

/// Throws empty_input for an empty sample.
ClassStats class_stats(std::span<const double> values);
ClassStats class_stats(std::span<const ScoreReport> reports, ScoreField field);

struct Activity {
  std::string name;
  std::vector<ScoreReport> reports;
};

struct CohortRow {
  std::string student;
  /// One entry per activity, in activity order.
  std::vector<ScoreReport> results;
};

struct ActivityStats {
  std::string name;
  ClassStats direction;
  ClassStats polarity;
};

struct CohortTable {
  std::vector<CohortRow> rows;  // first activity's order
  std::vector<ActivityStats> stats;
};

/// Keeps students present in every activity. Throws empty_input or
/// no_common_students.
CohortTable cohort_track(std::span<const Activity> activities);

/// Per-activity statistics over every report, without roster matching.
std::vector<ActivityStats> activity_stats(std::span<const Activity> activities);

/// Two decimals, half-up, computed exactly from the counts: 17/32 -> "53.13".
std::string format_percent(int correct, int total);
/// Two decimals, half-up.
std::string format_fixed2(double value);

enum class ReportFormat { table_text, csv };

/// Rows in input order followed by Mean, Median, St Deviation and CV.
std::string render_report(std::span<const ScoreReport> reports, ReportFormat format);

/// Table of per-activity mean/SD/CV for direction and polarity.
std::string render_activity_stats(std::span<const ActivityStats> stats);

/// Per-student percentages across activities plus footer statistics.
std::string render_cohort(const CohortTable& table, std::span<const std::string> activity_names);

/// Reads the CSV written by render_report; pseudo-rows starting with '#' are
/// skipped.
std::vector<ScoreReport> read_report_csv(std::string_view text);

}  // namespace causal_econ
