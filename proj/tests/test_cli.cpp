#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(TOPOPASS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof buf, pipe)) out += buf;
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("topopass_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("list enumerates every experiment with its figure") {
    const auto r = run("list");
    CHECK(r.code == 0);
    for (const char* name : {"spectrum-vs-delta", "hybrid-mode-map", "mixing-angle-sweep", "dark-state-populations",
                             "gap-map", "zero-state-map", "adiabatic-evolve", "fidelity-vs-delta",
                             "fidelity-vs-omega", "disorder-map", "fidelity-ensemble"})
        CHECK(r.out.find(name) != std::string::npos);
    CHECK(r.out.find("Fig. 7(c)") != std::string::npos);
}

TEST_CASE("help and version exit cleanly") {
    CHECK(run("--help").code == 0);
    CHECK(run("gap-map --help").code == 0);
    CHECK(run("--version").code == 0);
}

TEST_CASE("configuration errors exit with 2 and name the field") {
    auto r = run("no-such-experiment");
    CHECK(r.code == 2);
    r = run("gap-map --set system.theta=9 --out " + scratch("e1").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("system.theta") != std::string::npos);
    r = run("gap-map --set nonsense.key=1");
    CHECK(r.code == 2);
    CHECK(r.out.find("nonsense.key") != std::string::npos);
    r = run("gap-map --config /nonexistent/file.ini");
    CHECK(r.code == 2);
    r = run("gap-map --format pdf");
    CHECK(r.code == 2);
    CHECK(r.out.find("output.formats") != std::string::npos);
    CHECK(run("gap-map --threads -3").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("successful run writes the requested formats") {
    const fs::path dir = scratch("ok");
    const fs::path ini = fs::temp_directory_path() / "topopass_cli_ok.ini";
    std::ofstream(ini) << "[grid]\ntheta = linspace:0:pi:11\ncells = 2,3,4\n";
    const auto r = run("gap-map --config " + ini.string() + " --set grid.cells=3,4 --out " + dir.string() +
                       " --format csv,svg,json --threads 1");
    CHECK(r.code == 0);
    for (const char* f : {"gap_map.csv", "gap_map.meta.json", "gap_map.json", "gap_map_abs_G.svg", "gap_map_chi.svg"})
        CHECK(fs::exists(dir / f));
    std::ifstream csv(dir / "gap_map.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "cells,theta,abs_G,chi,chi_over_pi");
    std::string first;
    std::getline(csv, first);
    CHECK(first.rfind("3,", 0) == 0);  // --set overrides the file
}

TEST_CASE("output directory from the environment") {
    const fs::path dir = scratch("env");
    ::setenv("TOPOPASS_OUTPUT_DIR", dir.c_str(), 1);
    const auto r = run("mixing-angle-sweep --set grid.theta=linspace:0:pi:9");
    ::unsetenv("TOPOPASS_OUTPUT_DIR");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "mixing_angle_sweep.csv"));
}

TEST_CASE("runtime failure exits with 1 and keeps partial outputs") {
    const fs::path dir = scratch("fail");
    const auto r = run("fidelity-vs-omega --set grid.omega=1e-12,1e-2 --threads 1 --format csv,json --out " +
                       dir.string());
    CHECK(r.code == 1);
    CHECK(r.out.find("partial") != std::string::npos);
    CHECK(r.out.find("steps exceed") != std::string::npos);
    REQUIRE(fs::exists(dir / "fidelity_vs_omega.csv"));
    std::ifstream csv(dir / "fidelity_vs_omega.csv");
    int lines = 0;
    for (std::string line; std::getline(csv, line);) ++lines;
    CHECK(lines == 1);  // header only
    std::ifstream sidecar(dir / "fidelity_vs_omega.json");
    const std::string text((std::istreambuf_iterator<char>(sidecar)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"failed\"") != std::string::npos);
}
