#include "causal_econ/http_service.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "causal_econ/json_io.hpp"
#include "causal_econ/multiplier.hpp"
#include "causal_econ/propagation.hpp"

namespace causal_econ {

namespace {

// Carries parser diagnostics out of a handler.
struct DiagnosticError {
  std::vector<ParseDiagnostic> diagnostics;
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::conflict: return 409;
    case ErrorCode::io_error: return 500;
    default: return 400;
  }
}

HttpResponse json_response(int status, const Json& body) {
  return {status, "application/json", body.dump()};
}

HttpResponse error_response(int status, std::string_view code, const std::string& message) {
  return json_response(status, {{"code", code}, {"message", message}});
}

HttpResponse diagnostics_response(const std::vector<ParseDiagnostic>& diags) {
  const auto first = std::find_if(diags.begin(), diags.end(),
                                  [](const auto& d) { return d.severity == Severity::error; });
  Json body = {{"code", first != diags.end() ? to_string(first->code) : "parse-error"},
               {"message", first != diags.end() ? first->message : "parse failed"}};
  if (first != diags.end())
    body["span"] = {{"line", first->span.line}, {"column", first->span.column}, {"length", first->span.length}};
  Json all = Json::array();
  for (const auto& d : diags) all.push_back(to_json(d));
  body["diagnostics"] = all;
  return json_response(400, body);
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const auto next = path.find('/', pos);
    const auto part = path.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (!part.empty()) parts.emplace_back(part);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

Json parse_body(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("request body is not valid JSON: ") + e.what());
  }
}

bool looks_like_json(std::string_view body) {
  const auto p = body.find_first_not_of(" \t\r\n");
  return p != std::string_view::npos && body[p] == '{';
}

CausalDiagram parse_dsl_or_throw(std::string_view text) {
  auto parsed = parse_diagram(text);
  if (!parsed) throw DiagnosticError{std::move(parsed.diagnostics)};
  return std::move(*parsed.value);
}

// A diagram named in a request: a workspace name, DSL text or a JSON object.
CausalDiagram resolve_diagram(const Workspace& ws, const Json& j) {
  if (j.is_object()) return diagram_from_json(j);
  if (!j.is_string()) throw Error(ErrorCode::parse_error, "diagram must be a name, DSL text or object");
  const auto s = j.get<std::string>();
  if (s.find('\n') == std::string::npos && Workspace::valid_name(s)) {
    if (auto d = ws.diagram(s)) return std::move(*d);
    throw Error(ErrorCode::not_found, "unknown diagram '" + s + "'");
  }
  return parse_dsl_or_throw(s);
}

AnswerSheet resolve_sheet(const Json& j, const CausalSkeleton& skeleton) {
  if (j.is_object()) return answer_sheet_from_json(j);
  if (!j.is_string()) throw Error(ErrorCode::parse_error, "sheet must be answer-sheet text or an object");
  auto parsed = parse_answer_sheet(j.get<std::string>(), skeleton);
  if (!parsed) throw DiagnosticError{std::move(parsed.diagnostics)};
  return std::move(*parsed.value);
}

std::string skeleton_name_of(const Json& sheet) {
  if (sheet.is_object()) {
    if (sheet.contains("skeleton") && sheet["skeleton"].is_string()) return sheet["skeleton"].get<std::string>();
    throw Error(ErrorCode::parse_error, "sheet object needs a 'skeleton' field");
  }
  if (!sheet.is_string()) throw Error(ErrorCode::parse_error, "sheet must be answer-sheet text or an object");
  // header line "answers <name>"
  std::istringstream in(sheet.get<std::string>());
  std::string word;
  while (in >> word) {
    if (word.starts_with('#')) {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (word == "answers") {
      std::string name;
      in >> name;
      if (name.size() >= 2 && name.front() == '"' && name.back() == '"') name = name.substr(1, name.size() - 2);
      return name;
    }
    break;
  }
  throw Error(ErrorCode::parse_error, "answer sheet has no 'answers <skeleton>' header");
}

Direction parse_direction(const std::string& s) {
  if (s == "up" || s == "increase" || s == "+") return Direction::increase;
  if (s == "down" || s == "decrease" || s == "-") return Direction::decrease;
  throw Error(ErrorCode::parse_error, "shock direction must be 'up' or 'down', got '" + s + "'");
}

std::string resolve_var(const CausalDiagram& d, const std::string& name) {
  if (auto id = d.resolve(name)) return *id;
  throw Error(ErrorCode::unknown_variable, "unknown variable '" + name + "'");
}

double query_number(const std::map<std::string, std::string>& q, const std::string& key,
                    std::optional<double> fallback) {
  auto it = q.find(key);
  if (it == q.end() || it->second.empty()) {
    if (fallback) return *fallback;
    throw Error(ErrorCode::invalid_parameter, "missing query parameter '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_parameter, "query parameter '" + key + "' is not a number");
  }
}

bool query_flag(const std::map<std::string, std::string>& q, const std::string& key) {
  auto it = q.find(key);
  return it != q.end() && (it->second == "true" || it->second == "1" || it->second.empty());
}

Json record_json(const SubmissionRecord& r) {
  return {{"skeleton", r.skeleton}, {"student", r.student}, {"timestamp", r.timestamp}, {"file", r.file}};
}

// ---------------------------------------------------------------------------
// Handlers

HttpResponse list_diagrams(const Workspace& ws) {
  Json arr = Json::array();
  for (const auto& d : ws.diagrams()) arr.push_back({{"name", d.name}, {"fixture", d.fixture}});
  return json_response(200, {{"diagrams", arr}});
}

HttpResponse get_diagram(const Workspace& ws, const std::string& name, const HttpRequest& req,
                         const std::string& view) {
  const auto d = ws.diagram(name);
  if (!d) return error_response(404, to_string(ErrorCode::not_found), "unknown diagram '" + name + "'");
  if (view == "skeleton") return json_response(200, to_json(skeleton_of(*d)));
  if (view == "loops") return json_response(200, to_json(enumerate_loops(*d)));
  const auto fmt = req.query.contains("format") ? req.query.at("format") : "json";
  if (fmt == "dsl") return {200, "text/plain; charset=utf-8", serialize_diagram(*d)};
  if (fmt == "dot") return {200, "text/vnd.graphviz; charset=utf-8", export_dot(*d)};
  if (fmt != "json") return error_response(400, "invalid-parameter", "unknown format '" + fmt + "'");
  return json_response(200, to_json(*d));
}

HttpResponse put_diagram(Workspace& ws, const std::string& name, const HttpRequest& req) {
  auto d = looks_like_json(req.body) ? diagram_from_json(parse_body(req.body)) : parse_dsl_or_throw(req.body);
  if (d.name() != name)
    return error_response(400, to_string(ErrorCode::invalid_parameter),
                          "diagram is named '" + d.name() + "' but was sent to /diagrams/" + name);
  const bool replaced = ws.put_diagram(d);
  return json_response(replaced ? 200 : 201, to_json(d));
}

HttpResponse post_propagate(const Workspace& ws, const HttpRequest& req) {
  const auto body = parse_body(req.body);
  if (!body.is_object() || !body.contains("diagram") || !body.contains("shock"))
    throw Error(ErrorCode::parse_error, "body needs 'diagram' and 'shock'");
  const auto d = resolve_diagram(ws, body["diagram"]);
  const auto& js = body["shock"];
  if (!js.is_object() || !js.contains("var") || !js["var"].is_string())
    throw Error(ErrorCode::parse_error, "shock needs a 'var' field");
  Shock shock{resolve_var(d, js["var"].get<std::string>()),
              parse_direction(js.value("dir", std::string("up")))};

  FrozenSet frozen;
  if (body.contains("freeze")) {
    if (!body["freeze"].is_array()) throw Error(ErrorCode::parse_error, "'freeze' must be an array");
    for (const auto& f : body["freeze"]) {
      if (!f.is_string()) throw Error(ErrorCode::parse_error, "'freeze' entries must be strings");
      frozen.insert(resolve_var(d, f.get<std::string>()));
    }
  }
  PropagationOptions options;
  if (body.contains("budget")) options.path_budget = body["budget"].get<std::size_t>();

  std::optional<std::string> target;
  if (body.contains("target") && !body["target"].is_null())
    target = resolve_var(d, body["target"].get<std::string>());
  return json_response(200, propagation_json(d, shock, target, frozen, options));
}

HttpResponse post_grade(const Workspace& ws, const HttpRequest& req) {
  const auto body = parse_body(req.body);
  if (!body.is_object() || !body.contains("reference") || !body.contains("sheet"))
    throw Error(ErrorCode::parse_error, "body needs 'reference' and 'sheet'");
  const auto reference = resolve_diagram(ws, body["reference"]);
  const auto sheet = resolve_sheet(body["sheet"], skeleton_of(reference));
  return json_response(200, to_json(grade(reference, sheet)));
}

HttpResponse get_multiplier(const HttpRequest& req) {
  const auto kind = req.query.contains("kind") ? req.query.at("kind") : "";
  const double mpc = query_number(req.query, "mpc", std::nullopt);
  const double delta = query_number(req.query, "delta", 1.0);
  const double rounds = query_number(req.query, "rounds", 10.0);
  if (rounds != std::floor(rounds) || rounds < 1 || rounds > 100000)
    throw Error(ErrorCode::invalid_parameter, "rounds must be an integer in [1, 100000]");
  if (kind == "g") return json_response(200, to_json(trace_g({mpc, delta, 0.0}, static_cast<int>(rounds))));
  if (kind == "t") return json_response(200, to_json(trace_t({mpc, 0.0, delta}, static_cast<int>(rounds))));
  throw Error(ErrorCode::invalid_parameter, "kind must be 'g' or 't'");
}

HttpResponse post_submission(Workspace& ws, const HttpRequest& req) {
  const auto body = parse_body(req.body);
  if (!body.is_object() || !body.contains("sheet")) throw Error(ErrorCode::parse_error, "body needs 'sheet'");
  const auto skeleton_name = skeleton_name_of(body["sheet"]);
  const auto reference = ws.diagram(skeleton_name);
  if (!reference) throw Error(ErrorCode::not_found, "unknown skeleton '" + skeleton_name + "'");
  auto sheet = resolve_sheet(body["sheet"], skeleton_of(*reference));
  std::optional<std::string> ts;
  if (body.contains("timestamp") && body["timestamp"].is_string()) ts = body["timestamp"].get<std::string>();
  const auto record = ws.submit(sheet, ts);
  auto j = record_json(record);
  j["report"] = to_json(grade(*reference, sheet));
  return json_response(201, j);
}

HttpResponse list_submissions(const Workspace& ws, const HttpRequest& req) {
  std::optional<std::string_view> skeleton;
  if (req.query.contains("skeleton")) skeleton = req.query.at("skeleton");
  Json arr = Json::array();
  for (const auto& r : ws.submissions(skeleton)) arr.push_back(record_json(r));
  return json_response(200, {{"submissions", arr}});
}

HttpResponse get_stats(const Workspace& ws, const HttpRequest& req) {
  if (!req.query.contains("skeleton"))
    throw Error(ErrorCode::invalid_parameter, "missing query parameter 'skeleton'");
  const auto& skeleton = req.query.at("skeleton");
  const auto reports = ws.graded_submissions(skeleton, query_flag(req.query, "all_attempts"));
  if (reports.empty()) throw Error(ErrorCode::not_found, "no submissions for '" + skeleton + "'");
  Json rs = Json::array();
  for (const auto& r : reports) rs.push_back(to_json(r));
  return json_response(200, {{"skeleton", skeleton},
                             {"n", reports.size()},
                             {"direction", to_json(class_stats(reports, ScoreField::direction_pct))},
                             {"polarity", to_json(class_stats(reports, ScoreField::polarity_pct))},
                             {"reports", rs}});
}

HttpResponse route(Workspace& ws, const HttpRequest& req) {
  const auto parts = split_path(req.path);
  const auto& m = req.method;
  const auto method_not_allowed = [&] {
    return error_response(405, "method-not-allowed", m + " is not supported on " + req.path);
  };

  if (!parts.empty() && parts[0] == "diagrams") {
    if (parts.size() == 1) return m == "GET" ? list_diagrams(ws) : method_not_allowed();
    if (parts.size() == 2) {
      if (m == "GET") return get_diagram(ws, parts[1], req, "");
      if (m == "PUT") return put_diagram(ws, parts[1], req);
      return method_not_allowed();
    }
    if (parts.size() == 3 && (parts[2] == "skeleton" || parts[2] == "loops"))
      return m == "GET" ? get_diagram(ws, parts[1], req, parts[2]) : method_not_allowed();
  } else if (parts.size() == 1) {
    const auto& p = parts[0];
    if (p == "propagate") return m == "POST" ? post_propagate(ws, req) : method_not_allowed();
    if (p == "grade") return m == "POST" ? post_grade(ws, req) : method_not_allowed();
    if (p == "multiplier") return m == "GET" ? get_multiplier(req) : method_not_allowed();
    if (p == "stats") return m == "GET" ? get_stats(ws, req) : method_not_allowed();
    if (p == "submissions") {
      if (m == "POST") return post_submission(ws, req);
      if (m == "GET") return list_submissions(ws, req);
      return method_not_allowed();
    }
  }
  return error_response(404, to_string(ErrorCode::not_found), "no route for " + req.path);
}

}  // namespace

HttpResponse Service::handle(const HttpRequest& request) const {
  try {
    return route(workspace_, request);
  } catch (const DiagnosticError& e) {
    return diagnostics_response(e.diagnostics);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_response(400, to_string(ErrorCode::parse_error), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

// ---------------------------------------------------------------------------
// Socket server

struct HttpServer::Impl {
  explicit Impl(const Service& s) : service(s) {}
  const Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query[k] = v;
    const auto out = impl_->service.handle(r);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  auto& s = impl_->server;
  s.Get(R"(/.*)", handler);
  s.Post(R"(/.*)", handler);
  s.Put(R"(/.*)", handler);
  s.Delete(R"(/.*)", handler);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& s = impl_->server;
  if (port == 0) {
    const int bound = s.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorCode::io_error, "cannot bind " + host);
    return bound;
  }
  if (!s.bind_to_port(host, port))
    throw Error(ErrorCode::io_error, "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace causal_econ
