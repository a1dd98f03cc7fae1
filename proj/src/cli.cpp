#include "causal_econ/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "causal_econ/fixtures.hpp"
#include "causal_econ/http_service.hpp"
#include "causal_econ/json_io.hpp"

namespace causal_econ {

namespace fs = std::filesystem;

namespace {

// Diagnostics were already printed; just leave with status 1.
struct Failed {};

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + p.string());
}

void print_diagnostics(const std::vector<ParseDiagnostic>& diags, const std::string& file, std::ostream& err) {
  for (const auto& d : diags) err << format_diagnostic(d, file) << '\n';
}

CausalDiagram load_diagram(const std::string& arg, std::ostream& err) {
  const fs::path path(arg);
  if (!fs::exists(path)) {
    if (auto f = fixtures::by_name(path.stem().string())) return std::move(*f);
    throw Error(ErrorCode::not_found, "no such file or fixture: " + arg);
  }
  auto parsed = parse_diagram(read_text(path));
  print_diagnostics(parsed.diagnostics, arg, err);
  if (!parsed) throw Failed{};
  return std::move(*parsed.value);
}

std::string resolve_var(const CausalDiagram& d, const std::string& name) {
  if (auto id = d.resolve(name)) return *id;
  throw Error(ErrorCode::unknown_variable, "unknown variable '" + name + "' in " + d.name());
}

Shock parse_shock(const CausalDiagram& d, const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::invalid_parameter, "--shock expects <var>:<up|down>");
  const auto dir = text.substr(colon + 1);
  Direction direction;
  if (dir == "up" || dir == "increase") direction = Direction::increase;
  else if (dir == "down" || dir == "decrease") direction = Direction::decrease;
  else throw Error(ErrorCode::invalid_parameter, "shock direction must be up or down, got '" + dir + "'");
  return {resolve_var(d, text.substr(0, colon)), direction};
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string number(double v) {
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  const auto text = read_text(file);
  if (fs::path(file).extension() == ".skel") {
    auto parsed = parse_skeleton(text);
    print_diagnostics(parsed.diagnostics, file, err);
    if (!parsed) return 1;
    out << "ok: skeleton " << parsed.value->name() << ", " << parsed.value->variables().size() << " variables, "
        << parsed.value->links().size() << " links\n";
    return 0;
  }
  auto parsed = parse_diagram(text);
  print_diagnostics(parsed.diagnostics, file, err);
  if (!parsed) return 1;
  out << "ok: diagram " << parsed.value->name() << ", " << parsed.value->variables().size() << " variables, "
      << parsed.value->edges().size() << " edges\n";
  return 0;
}

int cmd_loops(const std::string& file, bool json, std::ostream& out, std::ostream& err) {
  const auto d = load_diagram(file, err);
  const auto loops = enumerate_loops(d);
  if (json) {
    out << to_json(loops).dump(2) << '\n';
    return 0;
  }
  if (loops.loops.empty()) out << "no loops\n";
  for (const auto& l : loops.loops) {
    auto path = l.path();
    path.push_back(path.front());
    out << to_string(l.polarity) << ": " << join(path, " -> ") << '\n';
  }
  if (loops.truncated) err << "warning: loop enumeration truncated\n";
  return 0;
}

struct PropagateArgs {
  std::string file;
  std::string shock;
  std::string target;
  std::vector<std::string> freeze;
  std::string dot;
  std::size_t budget = PropagationOptions{}.path_budget;
  bool json = false;
};

int cmd_propagate(const PropagateArgs& a, std::ostream& out, std::ostream& err) {
  const auto d = load_diagram(a.file, err);
  const auto shock = parse_shock(d, a.shock);
  FrozenSet frozen;
  for (const auto& f : a.freeze) frozen.insert(resolve_var(d, f));
  const PropagationOptions options{a.budget};
  std::optional<std::string> target;
  if (!a.target.empty()) target = resolve_var(d, a.target);

  if (!a.dot.empty()) {
    const auto all = propagate_all(d, shock, frozen, options);
    write_text(a.dot, export_dot(d, &all));
  }
  if (a.json) {
    out << propagation_json(d, shock, target, frozen, options).dump(2) << '\n';
    return 0;
  }
  if (target) {
    const auto v = propagate(d, shock, *target, frozen, options);
    out << to_string(v.outcome) << '\n';
    for (const auto& p : v.witness_paths)
      out << "  " << sign_char(p.sign) << ' ' << join(p.variables(shock.variable), " -> ") << '\n';
    return 0;
  }
  for (const auto& [id, v] : propagate_all(d, shock, frozen, options)) out << id << '\t' << to_string(v.outcome) << '\n';
  return 0;
}

int cmd_multiplier(const std::string& kind, double mpc, double delta, int rounds, bool json, std::ostream& out) {
  IterationTrace trace;
  if (kind == "g") trace = trace_g({mpc, delta, 0.0}, rounds);
  else if (kind == "t") trace = trace_t({mpc, 0.0, delta}, rounds);
  else throw Error(ErrorCode::invalid_parameter, "--kind must be g or t");
  if (json) {
    out << to_json(trace).dump(2) << '\n';
    return 0;
  }
  const double m = kind == "g" ? g_multiplier(mpc) : t_multiplier(mpc);
  out << (kind == "g" ? "government purchases" : "tax") << " multiplier at mpc " << number(mpc) << ": "
      << number(m) << '\n';
  out << std::left << std::setw(7) << "round" << std::setw(42) << "label" << std::right << std::setw(16) << "amount"
      << std::setw(16) << "contribution" << std::setw(16) << "cumulative" << '\n';
  for (const auto& r : trace.rows)
    out << std::left << std::setw(7) << r.round << std::setw(42) << r.label << std::right << std::setw(16)
        << number(r.amount) << std::setw(16) << number(r.contribution) << std::setw(16) << number(r.cumulative)
        << '\n';
  out << "cumulative after " << rounds << " rounds: " << number(trace.cumulative()) << '\n';
  out << "closed form total: " << number(trace.closed_form_total) << '\n';
  return 0;
}

std::vector<fs::path> answer_files(const fs::path& p) {
  if (!fs::is_directory(p)) return {p};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(p))
    if (e.is_regular_file() && e.path().extension() == ".ans") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorCode::empty_input, "no .ans files in " + p.string());
  return files;
}

int cmd_grade(const std::string& ref, const std::string& answers, const std::string& csv, bool json,
              std::ostream& out, std::ostream& err) {
  const auto reference = load_diagram(ref, err);
  const auto skeleton = skeleton_of(reference);
  std::vector<ScoreReport> reports;
  bool failed = false;
  for (const auto& file : answer_files(answers)) {
    auto parsed = parse_answer_sheet(read_text(file), skeleton);
    print_diagnostics(parsed.diagnostics, file.string(), err);
    if (!parsed) {
      failed = true;
      continue;
    }
    reports.push_back(grade(reference, *parsed.value));
  }
  if (failed) return 1;
  if (!csv.empty()) write_text(csv, render_report(reports, ReportFormat::csv));
  if (json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
  } else {
    out << render_report(reports, ReportFormat::table_text);
  }
  return 0;
}

int cmd_stats_csv(const std::vector<std::string>& specs, bool common_only, std::ostream& out) {
  std::vector<Activity> activities;
  std::vector<std::string> names;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::invalid_parameter, "--activity expects name=file.csv");
    activities.push_back({s.substr(0, eq), read_report_csv(read_text(s.substr(eq + 1)))});
    names.push_back(s.substr(0, eq));
  }
  if (common_only) out << render_cohort(cohort_track(activities), names);
  else out << render_activity_stats(activity_stats(activities));
  return 0;
}

std::string workspace_dir(const std::string& flag) {
  if (const char* env = std::getenv("CAUSAL_ECON_WORKSPACE"); env && *env) return env;
  return flag;
}

int cmd_stats_workspace(const std::string& dir, const std::string& skeleton, bool all_attempts,
                        std::ostream& out) {
  const Workspace ws(workspace_dir(dir));
  const auto reports = ws.graded_submissions(skeleton, all_attempts);
  if (reports.empty()) throw Error(ErrorCode::empty_input, "no submissions for " + skeleton);
  out << render_report(reports, ReportFormat::table_text);
  return 0;
}

int cmd_skeleton(const std::string& file, const std::string& output, std::ostream& out, std::ostream& err) {
  const auto text = serialize_skeleton(skeleton_of(load_diagram(file, err)));
  if (output.empty()) out << text;
  else write_text(output, text);
  return 0;
}

int cmd_export(const std::string& file, const std::string& format, const std::string& output, std::ostream& out,
               std::ostream& err) {
  const auto d = load_diagram(file, err);
  std::string text;
  if (format == "dsl") text = serialize_diagram(d);
  else if (format == "json") text = to_json(d).dump(2) + "\n";
  else if (format == "dot") text = export_dot(d);
  else throw Error(ErrorCode::invalid_parameter, "--format must be dsl, json or dot");
  if (output.empty()) out << text;
  else write_text(output, text);
  return 0;
}

HttpServer* active_server = nullptr;

extern "C" void on_signal(int) {
  if (active_server) active_server->stop();
}

int cmd_serve(const std::string& host, int port, const std::string& dir, std::ostream& out) {
  Workspace ws(workspace_dir(dir));
  const Service service(ws);
  HttpServer server(service);
  const int bound = server.bind(host, port);
  out << "serving " << ws.root().string() << " on http://" << host << ':' << bound << std::endl;
  active_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  active_server = nullptr;
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qualitative causal reasoning for macroeconomics teaching", "causal-econ"};
  app.require_subcommand(1);

  std::string file, output, target, dot, kind, ref, answers, csv, format, skeleton_name;
  std::string host = "127.0.0.1", workspace = "causal-econ-workspace";
  std::vector<std::string> activities;
  bool json = false, common_only = false, all_attempts = false;
  double mpc = 0.0, delta = 1.0;
  int rounds = 10, port = 8080;
  PropagateArgs pa;

  auto* validate = app.add_subcommand("validate", "Parse a diagram or skeleton and print diagnostics");
  validate->add_option("file", file, "Diagram (.cdg) or skeleton (.skel)")->required();

  auto* loops = app.add_subcommand("loops", "List feedback loops with their polarity");
  loops->add_option("file", file, "Diagram file or fixture name")->required();
  loops->add_flag("--json", json, "Print JSON");

  auto* prop = app.add_subcommand("propagate", "Propagate a shock through a diagram");
  prop->add_option("file", pa.file, "Diagram file or fixture name")->required();
  prop->add_option("--shock", pa.shock, "<var>:<up|down>")->required();
  prop->add_option("--target", pa.target, "Variable to report on");
  prop->add_option("--freeze", pa.freeze, "Variables held fixed")->delimiter(',');
  prop->add_option("--dot", pa.dot, "Write a DOT overlay of every verdict");
  prop->add_option("--budget", pa.budget, "Maximum explored paths")->check(CLI::PositiveNumber);
  prop->add_flag("--json", pa.json, "Print JSON");

  auto* mult = app.add_subcommand("multiplier", "Round-by-round multiplier trace");
  mult->add_option("--kind", kind, "g or t")->required()->check(CLI::IsMember({"g", "t"}));
  mult->add_option("--mpc", mpc, "Marginal propensity to consume")->required();
  mult->add_option("--delta", delta, "Size of the change")->capture_default_str();
  mult->add_option("--rounds", rounds, "Rounds to trace")->capture_default_str()->check(CLI::Range(1, 100000));
  mult->add_flag("--json", json, "Print JSON");

  auto* grd = app.add_subcommand("grade", "Grade answer sheets against a reference diagram");
  grd->add_option("--ref", ref, "Reference diagram")->required();
  grd->add_option("--answers", answers, "Answer sheet or directory of .ans files")->required();
  grd->add_option("--csv", csv, "Also write the report as CSV");
  grd->add_flag("--json", json, "Print JSON");

  auto* stats = app.add_subcommand("stats", "Class statistics across activities or stored submissions");
  auto* act_opt = stats->add_option("--activity", activities, "name=report.csv, repeatable");
  auto* skel_opt = stats->add_option("--skeleton", skeleton_name, "Stored submissions for this skeleton");
  act_opt->excludes(skel_opt);
  stats->add_flag("--common-only", common_only, "Only students present in every activity")->needs(act_opt);
  stats->add_option("--workspace", workspace, "Workspace directory")->needs(skel_opt);
  stats->add_flag("--all-attempts", all_attempts, "Every attempt, not just the latest")->needs(skel_opt);

  auto* skel = app.add_subcommand("skeleton", "Write the undirected skeleton of a diagram");
  skel->add_option("file", file, "Diagram file or fixture name")->required();
  skel->add_option("-o,--output", output, "Output .skel file");

  auto* exp = app.add_subcommand("export", "Write a diagram as DSL, JSON or DOT");
  exp->add_option("file", file, "Diagram file or fixture name")->required();
  exp->add_option("--format", format, "dsl, json or dot")->required()->check(CLI::IsMember({"dsl", "json", "dot"}));
  exp->add_option("-o,--output", output, "Output file");

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host, "Address to bind")->capture_default_str();
  serve->add_option("--port", port, "Port, 0 for any free port")->capture_default_str()->check(CLI::Range(0, 65535));
  serve->add_option("--workspace", workspace, "Workspace directory (CAUSAL_ECON_WORKSPACE wins)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*validate) return cmd_validate(file, out, err);
    if (*loops) return cmd_loops(file, json, out, err);
    if (*prop) return cmd_propagate(pa, out, err);
    if (*mult) return cmd_multiplier(kind, mpc, delta, rounds, json, out);
    if (*grd) return cmd_grade(ref, answers, csv, json, out, err);
    if (*stats) {
      if (!skeleton_name.empty()) return cmd_stats_workspace(workspace, skeleton_name, all_attempts, out);
      if (activities.empty()) throw Error(ErrorCode::invalid_parameter, "stats needs --activity or --skeleton");
      return cmd_stats_csv(activities, common_only, out);
    }
    if (*skel) return cmd_skeleton(file, output, out, err);
    if (*exp) return cmd_export(file, format, output, out, err);
    if (*serve) return cmd_serve(host, port, workspace, out);
  } catch (const Failed&) {
    return 1;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace causal_econ
