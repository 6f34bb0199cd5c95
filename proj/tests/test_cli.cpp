#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef OPTOCOOL_BIN
#define OPTOCOOL_BIN "optocool"
#endif

namespace {

int run_command(const std::string& args) {
    const std::string cmd = std::string(OPTOCOOL_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string temp_path(const char* name) {
    return std::string("cli_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

const char* good_config = R"({
    "kappa_over_omega_m": 0.1,
    "gamma_m_over_omega_m": 1e-5,
    "n_th": 1000,
    "n_p": 100,
    "g0_ratio": 0.01,
    "detuning_over_omega_m": -1.0
})";

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("rates subcommand succeeds on a valid config") {
    const std::string cfg = temp_path("rates.json");
    write_file(cfg, good_config);
    CHECK(run_command("rates --config " + cfg) == 0);
    std::remove(cfg.c_str());
}

TEST_CASE("missing config yields the config-error exit code") {
    CHECK(run_command("rates") == 2);
    CHECK(run_command("rates --config does_not_exist.json") == 2);
}

TEST_CASE("malformed config yields the config-error exit code") {
    const std::string cfg = temp_path("bad.json");
    write_file(cfg, R"({"kappa_over_omega_m": 0.1, "bogus_key": 1})");
    CHECK(run_command("rates --config " + cfg) == 2);
    std::remove(cfg.c_str());
}

TEST_CASE("numerical failures yield exit code 3") {
    const std::string cfg = temp_path("blue.json");
    // blue-detuned drive: anti-damped, no steady state for the spectrum
    write_file(cfg, R"({
        "kappa_over_omega_m": 0.1,
        "gamma_m_over_omega_m": 1e-5,
        "n_th": 1000,
        "n_p": 100,
        "g0_ratio": 0.01,
        "detuning_over_omega_m": 1.0
    })");
    CHECK(run_command("spectrum --config " + cfg) == 3);
    std::remove(cfg.c_str());
}

TEST_CASE("preset sweep writes the expected CSV") {
    const std::string out = temp_path("fig2b.csv");
    CHECK(run_command("sweep --preset fig2b --out " + out) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "omega_m_over_kappa,min_phonon");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 200);
    std::remove(out.c_str());
}

TEST_CASE("config-driven sweep with contours and threads") {
    const std::string cfg = temp_path("sweep.json");
    std::ostringstream config;
    config << R"({
        "kappa_over_omega_m": 0.3,
        "quality_factor": 1e6,
        "n_th": 1000,
        "n_p": 1,
        "g0_ratio": 0.012,
        "detuning_over_omega_m": -1.0,
        "sweep": {
            "axis1": {"name": "detuning", "min": -2.0, "max": -0.3, "count": 24},
            "axis2": {"name": "n_p", "min": 0.5, "max": 60.0, "count": 20, "scale": "log"},
            "observable": "n_steady"
        }
    })";
    write_file(cfg, config.str());
    const std::string out = temp_path("sweep.csv");
    CHECK(run_command("sweep --config " + cfg + " --out " + out +
                      " --contours 1,0.1 --threads 2") == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "detuning[omega_m],n_p,n_steady,status");
    std::ifstream contours(out + ".contours.csv");
    CHECK(contours.good());
    std::remove(cfg.c_str());
    std::remove(out.c_str());
    std::remove((out + ".contours.csv").c_str());
}

TEST_CASE("master-eq subcommand writes populations and relaxation") {
    const std::string cfg = temp_path("master.json");
    write_file(cfg, R"({
        "kappa_over_omega_m": 0.1,
        "gamma_m_over_omega_m": 1e-4,
        "n_th": 5,
        "n_p": 20,
        "g0_ratio": 0.02,
        "detuning_over_omega_m": -1.0
    })");
    const std::string out = temp_path("master");
    CHECK(run_command("master-eq --config " + cfg + " --out " + out) == 0);
    std::ifstream pops(out + ".populations.csv");
    std::ifstream relax(out + ".relaxation.csv");
    CHECK(pops.good());
    CHECK(relax.good());
    std::remove(cfg.c_str());
    std::remove((out + ".populations.csv").c_str());
    std::remove((out + ".relaxation.csv").c_str());
}

TEST_SUITE_END();
