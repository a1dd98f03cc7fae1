#pragma once

// File-backed store for diagrams and submitted answer sheets.
//
// Layout under the root directory:
//   diagrams/<name>.cdg
//   submissions/index.jsonl              one JSON record per line, append-only
//   submissions/<skeleton>/<seq>_<student>.ans
//
// Built-in fixtures are always present and cannot be overwritten.

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "causal_econ/causal_core.hpp"
#include "causal_econ/grading.hpp"
#include "causal_econ/text_formats.hpp"

namespace causal_econ {

struct SubmissionRecord {
  std::string skeleton;
  std::string student;
  std::string timestamp;  // ISO-8601 UTC
  std::string file;       // relative to the workspace root

  friend bool operator==(const SubmissionRecord&, const SubmissionRecord&) = default;
};

struct DiagramEntry {
  std::string name;
  bool fixture = false;
};

class Workspace {
 public:
  /// Creates the directory layout if needed and loads the submission index.
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  std::vector<DiagramEntry> diagrams() const;
  std::optional<CausalDiagram> diagram(std::string_view name) const;
  bool is_fixture(std::string_view name) const;

  /// Stores under diagram.name(). Throws conflict for fixture names and
  /// invalid_parameter for names unusable as file names. Returns true if a
  /// stored diagram was replaced.
  bool put_diagram(const CausalDiagram& diagram);

  /// Throws not_found if the sheet's skeleton is not a known diagram and
  /// conflict if (skeleton, student, timestamp) is already stored. A
  /// timestamp is generated when none is given.
  SubmissionRecord submit(const AnswerSheet& sheet, std::optional<std::string> timestamp = std::nullopt);

  std::vector<SubmissionRecord> submissions(std::optional<std::string_view> skeleton = std::nullopt) const;

  AnswerSheet load_submission(const SubmissionRecord& record) const;

  /// Grades stored sheets against the diagram named by the skeleton. Only the
  /// latest attempt per student unless all_attempts is set. Ordered by
  /// student, then timestamp.
  std::vector<ScoreReport> graded_submissions(std::string_view skeleton, bool all_attempts = false) const;

  static bool valid_name(std::string_view name);

 private:
  std::filesystem::path diagram_path(std::string_view name) const;
  void load_index();

  std::filesystem::path root_;
  mutable std::shared_mutex mutex_;
  std::vector<SubmissionRecord> index_;
};

/// Current UTC time with microseconds, e.g. 2024-10-22T14:03:07.123456Z.
std::string utc_timestamp();

}  // namespace causal_econ
