#pragma once

// Line-oriented file formats.
//
// Diagram (.cdg):
//   diagram <name>
//   var <id> "<label>" [symbol=<sym>] [group=<tag>]
//   <id> -> <id> : +|-
//
// Skeleton (.skel):
//   skeleton <name>
//   var ...                      (as above)
//   <id> -- <id>
//
// Answer sheet (.ans):
//   answers <skeleton name>
//   student "<name>"
//   <id> -> <id> : +|-|?         orientation claimed
//   <id> -- <id> : +|-|?         orientation left blank
//   loop: reinforcing|balancing
//
// '#' starts a comment. Blank lines are ignored. LF or CRLF accepted; LF
// emitted. Ids match [A-Za-z_][A-Za-z0-9_]*.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causal_econ/causal_core.hpp"
#include "causal_econ/propagation.hpp"

namespace causal_econ {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based, in bytes
  int length = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { error, warning };

struct ParseDiagnostic {
  Severity severity = Severity::error;
  ErrorCode code = ErrorCode::parse_error;
  std::string message;
  SourceSpan span;
};

/// "file:line:col: error: message"
std::string format_diagnostic(const ParseDiagnostic& d, std::string_view file = {});

template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
  explicit operator bool() const { return ok(); }
};

enum class Orientation { forward, backward, blank };
enum class ClaimedPolarity { positive, negative, blank };

std::string_view to_string(Orientation o);
std::string_view to_string(ClaimedPolarity p);

struct LinkAnswer {
  Link link;
  /// forward means link.first -> link.second.
  Orientation orientation = Orientation::blank;
  ClaimedPolarity polarity = ClaimedPolarity::blank;

  friend bool operator==(const LinkAnswer&, const LinkAnswer&) = default;
};

struct AnswerSheet {
  std::string student;
  std::string skeleton;
  std::vector<LinkAnswer> answers;
  std::optional<LoopPolarity> loop_claim;

  friend bool operator==(const AnswerSheet&, const AnswerSheet&) = default;
};

ParseResult<CausalDiagram> parse_diagram(std::string_view text);
std::string serialize_diagram(const CausalDiagram& diagram);

ParseResult<CausalSkeleton> parse_skeleton(std::string_view text);
std::string serialize_skeleton(const CausalSkeleton& skeleton);

/// Answers are checked against the skeleton; links the sheet leaves out are
/// reported as warnings and grade as blank.
ParseResult<AnswerSheet> parse_answer_sheet(std::string_view text, const CausalSkeleton& skeleton);
std::string serialize_answer_sheet(const AnswerSheet& sheet);

/// The sheet a student would hand in if every link were answered correctly.
AnswerSheet perfect_sheet(const CausalDiagram& reference, std::string student);

/// Graphviz DOT. With an overlay, node labels get an arrow for increase or
/// decrease and '?' for indeterminate.
std::string export_dot(const CausalDiagram& diagram,
                       const std::map<std::string, PropagationVerdict>* overlay = nullptr);

}  // namespace causal_econ
