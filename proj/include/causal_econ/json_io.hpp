#pragma once

// Structured-data (JSON) form of the domain types. Field names mirror the
// C++ members.

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "causal_econ/causal_core.hpp"
#include "causal_econ/grading.hpp"
#include "causal_econ/multiplier.hpp"
#include "causal_econ/propagation.hpp"
#include "causal_econ/text_formats.hpp"

namespace causal_econ {

using Json = nlohmann::ordered_json;

Json to_json(const CausalDiagram& d);
Json to_json(const CausalSkeleton& s);
Json to_json(const FeedbackLoop& loop);
Json to_json(const LoopEnumeration& loops);
Json to_json(const PropagationVerdict& v, std::string_view source);
Json to_json(const IterationTrace& t);
Json to_json(const ScoreReport& r);
Json to_json(const ClassStats& s);
Json to_json(const AnswerSheet& sheet);
Json to_json(const ParseDiagnostic& d);

/// Runs propagate (or propagate_all when target is empty) and encodes the
/// result as {diagram, shock, target?, outcome?, witness_paths? | verdicts}.
Json propagation_json(const CausalDiagram& d, const Shock& shock, const std::optional<std::string>& target,
                      const FrozenSet& frozen, const PropagationOptions& options);

/// Throws Error(parse_error) on shape errors; validation errors from
/// build_diagram propagate unchanged.
CausalDiagram diagram_from_json(const Json& j);
AnswerSheet answer_sheet_from_json(const Json& j);

}  // namespace causal_econ
