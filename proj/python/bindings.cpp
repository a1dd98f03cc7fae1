// Python extension. Structured values cross the boundary as JSON text; the
// package __init__ decodes them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "causal_econ/fixtures.hpp"
#include "causal_econ/grading.hpp"
#include "causal_econ/json_io.hpp"
#include "causal_econ/multiplier.hpp"
#include "causal_econ/text_formats.hpp"

namespace py = pybind11;
using namespace causal_econ;

namespace {

// Carries parse diagnostics out to Python.
struct ParseFailure {
  Json diagnostics;
};

CausalDiagram load_diagram(const std::string& source) {
  if (!source.empty() && source.front() == '{') return diagram_from_json(Json::parse(source));
  if (source.find('\n') == std::string::npos)
    if (auto d = fixtures::by_name(source)) return *d;
  auto parsed = parse_diagram(source);
  if (!parsed) {
    ParseFailure f{Json::array()};
    for (const auto& d : parsed.diagnostics) f.diagnostics.push_back(to_json(d));
    throw f;
  }
  return std::move(*parsed.value);
}

std::string resolve(const CausalDiagram& d, const std::string& name) {
  if (auto id = d.resolve(name)) return *id;
  throw Error(ErrorCode::unknown_variable, "unknown variable '" + name + "'");
}

Direction direction(const std::string& s) {
  if (s == "up" || s == "increase" || s == "+") return Direction::increase;
  if (s == "down" || s == "decrease" || s == "-") return Direction::decrease;
  throw Error(ErrorCode::parse_error, "shock direction must be 'up' or 'down', got '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  static py::exception<ParseFailure> parse_error(m, "ParseError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseFailure& f) {
      const auto& first = f.diagnostics.at(0);
      py::object e = py::handle(parse_error.ptr())(py::str(first["message"].get<std::string>()));
      e.attr("code") = "parse-error";
      e.attr("diagnostics") = f.diagnostics.dump();
      PyErr_SetObject(parse_error.ptr(), e.ptr());
    } catch (const Error& ex) {
      py::object e = py::handle(error.ptr())(py::str(ex.what()));
      e.attr("code") = std::string(to_string(ex.code()));
      PyErr_SetObject(error.ptr(), e.ptr());
    } catch (const nlohmann::json::exception& ex) {
      PyErr_SetString(PyExc_ValueError, ex.what());
    }
  });

  m.def("fixture_names", [] {
    std::vector<std::string> out;
    for (auto n : fixtures::names()) out.emplace_back(n);
    return out;
  });
  m.def("load", [](const std::string& source) { return to_json(load_diagram(source)).dump(); }, py::arg("source"));
  m.def("to_dsl", [](const std::string& source) { return serialize_diagram(load_diagram(source)); }, py::arg("source"));
  m.def("to_dot", [](const std::string& source) { return export_dot(load_diagram(source)); }, py::arg("source"));
  m.def("skeleton", [](const std::string& source) { return serialize_skeleton(skeleton_of(load_diagram(source))); },
        py::arg("source"));
  m.def("loops", [](const std::string& source) { return to_json(enumerate_loops(load_diagram(source))).dump(); },
        py::arg("source"));

  m.def(
      "propagate",
      [](const std::string& source, const std::string& var, const std::string& dir,
         const std::optional<std::string>& target, const std::vector<std::string>& freeze) {
        const auto d = load_diagram(source);
        FrozenSet frozen;
        for (const auto& f : freeze) frozen.insert(resolve(d, f));
        std::optional<std::string> tgt;
        if (target) tgt = resolve(d, *target);
        return propagation_json(d, {resolve(d, var), direction(dir)}, tgt, frozen, {}).dump();
      },
      py::arg("source"), py::arg("var"), py::arg("dir") = "up", py::arg("target") = py::none(),
      py::arg("freeze") = std::vector<std::string>{});

  m.def("g_multiplier", &g_multiplier, py::arg("mpc"));
  m.def("t_multiplier", &t_multiplier, py::arg("mpc"));
  m.def(
      "trace",
      [](const std::string& kind, double mpc, double delta, int rounds) {
        if (kind == "g") return to_json(trace_g({mpc, delta, 0.0}, rounds)).dump();
        if (kind == "t") return to_json(trace_t({mpc, 0.0, delta}, rounds)).dump();
        throw Error(ErrorCode::invalid_parameter, "kind must be 'g' or 't'");
      },
      py::arg("kind"), py::arg("mpc"), py::arg("delta") = 1.0, py::arg("rounds") = 10);

  m.def(
      "grade",
      [](const std::string& reference, const std::string& sheet) {
        const auto ref = load_diagram(reference);
        auto parsed = parse_answer_sheet(sheet, skeleton_of(ref));
        if (!parsed) {
          ParseFailure f{Json::array()};
          for (const auto& d : parsed.diagnostics) f.diagnostics.push_back(to_json(d));
          throw f;
        }
        return to_json(causal_econ::grade(ref, *parsed.value)).dump();
      },
      py::arg("reference"), py::arg("sheet"));
  m.def(
      "class_stats", [](const std::vector<double>& values) { return to_json(class_stats(values)).dump(); },
      py::arg("values"));
  m.def("format_percent", &format_percent, py::arg("correct"), py::arg("total"));
}
