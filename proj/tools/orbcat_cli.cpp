#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "orbcat/suites.hpp"

using namespace orbcat;

namespace {

Instance resolve_instance(const std::string& arg) {
    std::ifstream probe(arg);
    if (probe.good()) return load_instance(arg);
    for (const auto& b : builtin_names())
        if (b == arg) return builtin_instance(arg);
    throw Error("no such instance file or builtin: " + arg);
}

void print_reports(const std::vector<CheckReport>& reports) {
    for (const auto& rep : reports) {
        std::printf("== %s\n", rep.title.c_str());
        for (const auto& l : rep.lines) {
            std::printf("%s %-44s residual=%.3e tol=%.1e%s%s -- %s\n",
                        l.pass ? "PASS" : "FAIL", l.key.c_str(), l.residual, l.tol,
                        l.note.empty() ? "" : "  ", l.note.c_str(), l.anchor.c_str());
        }
    }
}

nlohmann::json reports_to_json(const std::string& command, const Instance& in,
                               const RunOptions& opts, const std::vector<CheckReport>& reports,
                               bool pass) {
    nlohmann::json j;
    j["command"] = command;
    j["instance"] = in.name;
    j["seed"] = opts.seed;
    j["pass"] = pass;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& rep : reports)
        for (const auto& l : rep.lines) {
            nlohmann::json c;
            c["suite"] = rep.title;
            c["key"] = l.key;
            c["anchor"] = l.anchor;
            c["residual"] = l.residual;
            c["tol"] = l.tol;
            c["pass"] = l.pass;
            if (!l.note.empty()) c["note"] = l.note;
            checks.push_back(std::move(c));
        }
    j["checks"] = std::move(checks);
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computations in finitely presented braided monoidal supercategories:\n"
                 "superalgebra objects, twisted modules, sector projectors, braided\n"
                 "G-crossed structure, and G-equivariantization, verified as matrices"};
    app.require_subcommand(1);

    std::string instance_arg, output_path, module_name, category = "repv", emit_target;
    RunOptions opts;
    double tol_flag = -1.0;
    bool exact_flag = false, float_flag = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("instance", instance_arg, "instance file (or builtin name)")->required();
        sub->add_option("--tol", tol_flag, "tolerance override");
        sub->add_flag("--exact", exact_flag, "force exact Gaussian-rational arithmetic");
        sub->add_flag("--float", float_flag, "force complex floating-point arithmetic");
        sub->add_option("--output", output_path, "write a JSON report here");
        sub->add_option("--seed", opts.seed, "seed recorded in reports");
    };

    CLI::App* validate = app.add_subcommand("validate", "pentagon/hexagon/unit validation");
    add_common(validate);
    CLI::App* algebra = app.add_subcommand("algebra-check", "superalgebra and assumption suite");
    add_common(algebra);
    CLI::App* decompose = app.add_subcommand("decompose", "twisted sector decomposition");
    add_common(decompose);
    decompose->add_option("--module", module_name, "declared module name")->required();
    CLI::App* sectors = app.add_subcommand("sectors", "twist table for all modules");
    add_common(sectors);
    CLI::App* equiv = app.add_subcommand("equivariantize",
                                         "equivariant simple counts and the equivalence report");
    add_common(equiv);
    CLI::App* paper = app.add_subcommand("paper-suite",
                                         "identity chains, projector properties, lemmas, "
                                         "G-crossed axioms, functor checks");
    add_common(paper);
    CLI::App* fusion = app.add_subcommand("fusion-table", "x_V multiplication table");
    add_common(fusion);
    fusion->add_option("--category", category, "repv | equivariant");
    CLI::App* emit = app.add_subcommand("emit", "write a builtin instance file");
    emit->add_option("builtin", emit_target, "ph | ising | z2 | z3 | z4")->required();
    emit->add_option("-o,--output", output_path, "target path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (emit->parsed()) {
            save_instance(builtin_instance(emit_target), output_path);
            std::printf("wrote %s\n", output_path.c_str());
            return 0;
        }
        if (tol_flag > 0) opts.tol = tol_flag;
        if (exact_flag) opts.exact = true;
        if (float_flag) opts.exact = false;
        opts.module_name = module_name;
        opts.table_category = category;

        std::string command = app.get_subcommands().at(0)->get_name();
        Instance in = resolve_instance(instance_arg);
        std::vector<CheckReport> reports = run_command(command, in, opts);
        print_reports(reports);

        bool pass = true;
        int checks = 0;
        for (const auto& rep : reports) {
            pass = pass && rep.pass();
            checks += int(rep.lines.size());
        }
        std::printf("%s: %d checks, %s\n", command.c_str(), checks,
                    pass ? "all pass" : "FAILURES");
        if (!output_path.empty()) {
            std::ofstream f(output_path);
            f << reports_to_json(command, in, opts, reports, pass).dump(1) << "\n";
        }
        return pass ? 0 : 1;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 2;
    }
}
