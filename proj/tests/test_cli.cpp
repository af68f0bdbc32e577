#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "orbcat/io.hpp"

using namespace orbcat;

namespace {

#ifndef ORBCAT_CLI_PATH
#define ORBCAT_CLI_PATH "orbcat"
#endif
#ifndef ORBCAT_INSTANCE_DIR
#define ORBCAT_INSTANCE_DIR "instances"
#endif

int run_cli(const std::string& args, const std::string& stdout_to = "") {
    std::string cmd = std::string(ORBCAT_CLI_PATH) + " " + args;
    cmd += stdout_to.empty() ? " > /dev/null 2>&1" : " > " + stdout_to + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("validate exits 0 on good instances") {
    CHECK(run_cli(std::string("validate ") + ORBCAT_INSTANCE_DIR + "/ph.json") == 0);
    CHECK(run_cli(std::string("validate ") + ORBCAT_INSTANCE_DIR + "/ising.json") == 0);
}

TEST_CASE("validate exits 1 on a hexagon-perturbed instance and prints the residual") {
    Instance bad = builtin_instance("ising");
    auto key = std::array<int, 3>{bad.spec.index_of("sigma"), bad.spec.index_of("sigma"),
                                  bad.spec.index_of("1")};
    bad.spec.R[key] = std::conj(bad.spec.R.at(key));
    save_instance(bad, "/tmp/orbcat_broken.json");
    CHECK(run_cli("validate /tmp/orbcat_broken.json", "/tmp/orbcat_broken_out.txt") == 1);
    std::string out = slurp("/tmp/orbcat_broken_out.txt");
    CHECK(out.find("FAIL hexagon") != std::string::npos);
    CHECK(out.find("worst at") != std::string::npos);
}

TEST_CASE("input errors exit 2") {
    CHECK(run_cli("validate /no/such/file.json") == 2);
    CHECK(run_cli("decompose ph --module NadaSuch") == 2);
}

TEST_CASE("reports are deterministic") {
    CHECK(run_cli("paper-suite ph --seed 7", "/tmp/orbcat_run1.txt") == 0);
    CHECK(run_cli("paper-suite ph --seed 7", "/tmp/orbcat_run2.txt") == 0);
    CHECK(slurp("/tmp/orbcat_run1.txt") == slurp("/tmp/orbcat_run2.txt"));
    CHECK(!slurp("/tmp/orbcat_run1.txt").empty());
}

TEST_CASE("json report has one entry per check with anchors") {
    CHECK(run_cli("algebra-check ph --output /tmp/orbcat_rep.json") == 0);
    nlohmann::json j = nlohmann::json::parse(slurp("/tmp/orbcat_rep.json"));
    CHECK(j["pass"].get<bool>());
    CHECK(j["instance"] == "ph");
    CHECK(j["checks"].size() > 10);
    for (const auto& c : j["checks"]) {
        CHECK(!c["key"].get<std::string>().empty());
        CHECK(!c["anchor"].get<std::string>().empty());
        CHECK(c.contains("residual"));
        CHECK(c.contains("pass"));
    }
}

TEST_CASE("paper-suite lines all carry catalog anchors") {
    CHECK(run_cli("paper-suite z2 --output /tmp/orbcat_ps.json") == 0);
    nlohmann::json j = nlohmann::json::parse(slurp("/tmp/orbcat_ps.json"));
    for (const auto& c : j["checks"])
        CHECK(!c["anchor"].get<std::string>().empty());
}

TEST_CASE("fusion-table equivariant category") {
    CHECK(run_cli("fusion-table ph --category equivariant") == 0);
    CHECK(run_cli("fusion-table ph --category bogus") == 2);
}

TEST_CASE("emit regenerates loadable instances") {
    CHECK(run_cli("emit z2 -o /tmp/orbcat_z2.json") == 0);
    Instance a = load_instance("/tmp/orbcat_z2.json");
    Instance b = builtin_instance("z2");
    CHECK(instance_to_json_text(a) == instance_to_json_text(b));
}
