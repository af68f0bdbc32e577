#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbcat/suites.hpp"

namespace py = pybind11;
using namespace orbcat;

namespace {

Instance resolve(const std::string& arg) {
    for (const auto& b : builtin_names())
        if (b == arg) return builtin_instance(arg);
    return load_instance(arg);
}

RunOptions make_opts(std::optional<double> tol, std::optional<bool> exact,
                     const std::string& module_name, const std::string& category,
                     std::uint64_t seed) {
    RunOptions o;
    o.tol = tol;
    o.exact = exact;
    o.module_name = module_name;
    o.table_category = category;
    o.seed = seed;
    return o;
}

py::dict line_to_dict(const CheckReport& rep, const CheckLine& l) {
    py::dict d;
    d["suite"] = rep.title;
    d["key"] = l.key;
    d["anchor"] = l.anchor;
    d["residual"] = l.residual;
    d["tol"] = l.tol;
    d["pass"] = l.pass;
    d["note"] = l.note;
    return d;
}

py::dict run(const std::string& command, const std::string& instance,
             std::optional<double> tol, std::optional<bool> exact,
             const std::string& module_name, const std::string& category, std::uint64_t seed) {
    Instance in = resolve(instance);
    RunOptions opts = make_opts(tol, exact, module_name, category, seed);
    std::vector<CheckReport> reports = run_command(command, in, opts);
    bool pass = true;
    py::list checks;
    for (const auto& rep : reports) {
        pass = pass && rep.pass();
        for (const auto& l : rep.lines) checks.append(line_to_dict(rep, l));
    }
    py::dict out;
    out["command"] = command;
    out["instance"] = in.name;
    out["pass"] = pass;
    out["checks"] = checks;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "matrix evaluation in braided monoidal supercategories: superalgebras, "
              "twisted modules, sector projectors, G-crossed structure, equivariantization";

    m.def("builtin_names", &builtin_names, "names of the shipped instances");
    m.def("emit_instance",
          [](const std::string& builtin, const std::string& path) {
              save_instance(builtin_instance(builtin), path);
          },
          py::arg("builtin"), py::arg("path"), "write a builtin instance file");

    auto cmd = [&m](const char* name, const char* doc) {
        m.def(name,
              [name](const std::string& instance, std::optional<double> tol,
                     std::optional<bool> exact, std::uint64_t seed) {
                  std::string c = name;
                  for (auto& ch : c)
                      if (ch == '_') ch = '-';
                  return run(c, instance, tol, exact, "", "repv", seed);
              },
              py::arg("instance"), py::arg("tol") = std::nullopt,
              py::arg("exact") = std::nullopt, py::arg("seed") = 0, doc);
    };
    cmd("validate", "pentagon/hexagon/unit validation report");
    cmd("algebra_check", "superalgebra axioms and the assumption suite");
    cmd("sectors", "twist table for declared and free modules");
    cmd("equivariantize", "equivariant simple counts and the equivalence report");
    cmd("paper_suite", "identity chains, projector properties, lemmas, G-crossed axioms, "
                       "functor checks");

    m.def("decompose",
          [](const std::string& instance, const std::string& module_name,
             std::optional<double> tol, std::optional<bool> exact, std::uint64_t seed) {
              return run("decompose", instance, tol, exact, module_name, "repv", seed);
          },
          py::arg("instance"), py::arg("module"), py::arg("tol") = std::nullopt,
          py::arg("exact") = std::nullopt, py::arg("seed") = 0,
          "twisted sector decomposition of a declared module");
    m.def("fusion_table",
          [](const std::string& instance, const std::string& category,
             std::optional<double> tol, std::optional<bool> exact, std::uint64_t seed) {
              return run("fusion-table", instance, tol, exact, "", category, seed);
          },
          py::arg("instance"), py::arg("category") = "repv", py::arg("tol") = std::nullopt,
          py::arg("exact") = std::nullopt, py::arg("seed") = 0,
          "x_V multiplication table over the simple set");

    m.def("parse_expr", [](const std::string& text) { return render(parse(text)); },
          "parse a morphism expression and return its canonical rendering");

    py::register_exception<Error>(m, "OrbcatError");
}
