#include "causal_econ/json_io.hpp"

namespace causal_econ {

namespace {

Json variable_json(const Variable& v) {
  Json j = {{"id", v.id}, {"label", v.label}};
  if (v.symbol) j["symbol"] = *v.symbol;
  if (v.group) j["group"] = *v.group;
  return j;
}

Json edge_json(const CausalEdge& e) {
  return {{"from", e.from}, {"to", e.to}, {"polarity", to_string(e.polarity)}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::parse_error, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::parse_error, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> optional_field(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key);
}

Polarity polarity_from(const std::string& s) {
  if (s == "positive" || s == "+") return Polarity::positive;
  if (s == "negative" || s == "-") return Polarity::negative;
  throw Error(ErrorCode::parse_error, "polarity must be 'positive' or 'negative', got '" + s + "'");
}

}  // namespace

Json to_json(const CausalDiagram& d) {
  Json vars = Json::array();
  for (const auto& v : d.variables()) vars.push_back(variable_json(v));
  Json edges = Json::array();
  for (const auto& e : d.edges()) edges.push_back(edge_json(e));
  return {{"name", d.name()}, {"variables", vars}, {"edges", edges}};
}

Json to_json(const CausalSkeleton& s) {
  Json vars = Json::array();
  for (const auto& v : s.variables()) vars.push_back(variable_json(v));
  Json links = Json::array();
  for (const auto& l : s.links()) links.push_back(Json::array({l.first, l.second}));
  return {{"name", s.name()}, {"variables", vars}, {"links", links}};
}

Json to_json(const FeedbackLoop& loop) {
  Json cycle = Json::array();
  for (const auto& e : loop.cycle) cycle.push_back(edge_json(e));
  return {{"cycle", cycle}, {"path", loop.path()}, {"polarity", to_string(loop.polarity)}};
}

Json to_json(const LoopEnumeration& loops) {
  Json arr = Json::array();
  for (const auto& l : loops.loops) arr.push_back(to_json(l));
  return {{"loops", arr}, {"truncated", loops.truncated}};
}

Json to_json(const PropagationVerdict& v, std::string_view source) {
  Json paths = Json::array();
  for (const auto& p : v.witness_paths) {
    Json edges = Json::array();
    for (const auto& e : p.edges) edges.push_back(edge_json(e));
    paths.push_back({{"variables", p.variables(source)}, {"edges", edges}, {"sign", to_string(p.sign)}});
  }
  return {{"target", v.target}, {"outcome", to_string(v.outcome)}, {"witness_paths", paths}};
}

Json propagation_json(const CausalDiagram& d, const Shock& shock, const std::optional<std::string>& target,
                      const FrozenSet& frozen, const PropagationOptions& options) {
  Json out = {{"diagram", d.name()},
              {"shock", {{"var", shock.variable}, {"dir", to_string(shock.direction)}}}};
  if (target) {
    const auto verdict = to_json(propagate(d, shock, *target, frozen, options), shock.variable);
    for (const auto& [k, v] : verdict.items()) out[k] = v;
    return out;
  }
  Json verdicts = Json::object();
  for (const auto& [id, v] : propagate_all(d, shock, frozen, options)) verdicts[id] = to_json(v, shock.variable);
  out["verdicts"] = verdicts;
  return out;
}

Json to_json(const IterationTrace& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"round", r.round},
                    {"label", r.label},
                    {"amount", r.amount},
                    {"contribution", r.contribution},
                    {"cumulative", r.cumulative}});
  const double multiplier =
      t.kind == MultiplierKind::government_purchases ? g_multiplier(t.mpc) : t_multiplier(t.mpc);
  return {{"kind", to_string(t.kind)},       {"mpc", t.mpc},
          {"delta", t.delta},                {"multiplier", multiplier},
          {"rows", rows},                    {"cumulative", t.cumulative()},
          {"closed_form_total", t.closed_form_total}};
}

Json to_json(const ScoreReport& r) {
  Json j = {{"student", r.student},
            {"total_links", r.total_links},
            {"direction_correct", r.direction_correct},
            {"polarity_correct", r.polarity_correct},
            {"direction_pct", r.direction_pct},
            {"polarity_pct", r.polarity_pct},
            {"direction_display", format_percent(r.direction_correct, r.total_links) + "%"},
            {"polarity_display", format_percent(r.polarity_correct, r.total_links) + "%"}};
  j["loop_claim_correct"] = r.loop_claim_correct ? Json(*r.loop_claim_correct) : Json(nullptr);
  return j;
}

Json to_json(const ClassStats& s) {
  return {{"n", s.n},
          {"mean", s.mean},
          {"median", s.median},
          {"sd", optional_number(s.sd)},
          {"cv", optional_number(s.cv)}};
}

Json to_json(const AnswerSheet& sheet) {
  Json answers = Json::array();
  for (const auto& a : sheet.answers)
    answers.push_back({{"link", Json::array({a.link.first, a.link.second})},
                       {"orientation", to_string(a.orientation)},
                       {"polarity", to_string(a.polarity)}});
  Json j = {{"student", sheet.student}, {"skeleton", sheet.skeleton}, {"answers", answers}};
  j["loop_claim"] = sheet.loop_claim ? Json(to_string(*sheet.loop_claim)) : Json(nullptr);
  return j;
}

Json to_json(const ParseDiagnostic& d) {
  return {{"severity", d.severity == Severity::error ? "error" : "warning"},
          {"code", to_string(d.code)},
          {"message", d.message},
          {"span", {{"line", d.span.line}, {"column", d.span.column}, {"length", d.span.length}}}};
}

CausalDiagram diagram_from_json(const Json& j) {
  std::vector<Variable> vars;
  const auto jv = field<Json>(j, "variables");
  if (!jv.is_array()) throw Error(ErrorCode::parse_error, "'variables' must be an array");
  for (const auto& v : jv)
    vars.push_back({field<std::string>(v, "id"), optional_field<std::string>(v, "label").value_or(""),
                    optional_field<std::string>(v, "symbol"), optional_field<std::string>(v, "group")});
  std::vector<CausalEdge> edges;
  const auto je = field<Json>(j, "edges");
  if (!je.is_array()) throw Error(ErrorCode::parse_error, "'edges' must be an array");
  for (const auto& e : je)
    edges.push_back({field<std::string>(e, "from"), field<std::string>(e, "to"),
                     polarity_from(field<std::string>(e, "polarity"))});
  return build_diagram(field<std::string>(j, "name"), std::move(vars), std::move(edges));
}

AnswerSheet answer_sheet_from_json(const Json& j) {
  AnswerSheet sheet;
  sheet.student = field<std::string>(j, "student");
  sheet.skeleton = optional_field<std::string>(j, "skeleton").value_or("");
  if (auto claim = optional_field<std::string>(j, "loop_claim")) {
    if (*claim == "reinforcing") sheet.loop_claim = LoopPolarity::reinforcing;
    else if (*claim == "balancing") sheet.loop_claim = LoopPolarity::balancing;
    else throw Error(ErrorCode::parse_error, "loop_claim must be 'reinforcing' or 'balancing'");
  }
  const auto answers = optional_field<Json>(j, "answers").value_or(Json::array());
  for (const auto& a : answers) {
    const auto link = field<std::vector<std::string>>(a, "link");
    if (link.size() != 2) throw Error(ErrorCode::parse_error, "'link' must name two variables");
    LinkAnswer la{Link(link[0], link[1]), Orientation::blank, ClaimedPolarity::blank};
    // orientation is relative to the pair as written in the request
    const auto o = optional_field<std::string>(a, "orientation").value_or("blank");
    const bool as_written = link[0] == la.link.first;
    if (o == "forward") la.orientation = as_written ? Orientation::forward : Orientation::backward;
    else if (o == "backward") la.orientation = as_written ? Orientation::backward : Orientation::forward;
    else if (o != "blank") throw Error(ErrorCode::parse_error, "unknown orientation '" + o + "'");
    const auto p = optional_field<std::string>(a, "polarity").value_or("blank");
    if (p == "positive" || p == "+") la.polarity = ClaimedPolarity::positive;
    else if (p == "negative" || p == "-") la.polarity = ClaimedPolarity::negative;
    else if (p != "blank" && p != "?") throw Error(ErrorCode::parse_error, "unknown polarity '" + p + "'");
    sheet.answers.push_back(std::move(la));
  }
  return sheet;
}

}  // namespace causal_econ
