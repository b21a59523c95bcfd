// End-to-end checks of the catsim executable: determinism, schema stability
// against the golden files, exit-code contract, state dump round-trip.
// Usage: cli_integration <path-to-catsim> <golden-dir>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "catsim/json_io.hpp"

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run(const std::string& command) { return std::system(command.c_str()); }

int exit_code(int status) {
#ifdef WEXITSTATUS
    return WEXITSTATUS(status);
#else
    return status;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: cli_integration <catsim> <golden-dir>\n";
        return 1;
    }
    std::string bin = argv[1];
    std::string golden_dir = argv[2];
    std::string tmp = "cli_integration_tmp";
    (void)run("rm -rf " + tmp + " && mkdir -p " + tmp);

    // Sweep determinism and golden schema.
    {
        std::string cmd = bin +
                          " sweep --quantity mean_photon --M 3 --start 0.5 --stop 1.5 "
                          "--step 0.5 -o " +
                          tmp + "/mean.csv 2>/dev/null";
        check(exit_code(run(cmd)) == 0, "sweep mean_photon exits 0");
        std::string first = slurp(tmp + "/mean.csv");
        (void)run(cmd);
        check(first == slurp(tmp + "/mean.csv") && !first.empty(),
              "sweep output is byte-deterministic");

        std::string golden = slurp(golden_dir + "/sweep_mean_photon_M3.csv");
        check(first == golden, "sweep output matches the golden file");

        std::istringstream lines(first);
        std::string header;
        std::getline(lines, header);
        check(header == "alpha2,nbar_minus_M3,nbar_plus_M3", "mean_photon CSV header");
    }
    {
        std::string cmd = bin +
                          " sweep --quantity gen_prob --Q 3 --M 5 --M 6 --M 7 --start 0.25 "
                          "--stop 1 --step 0.25 -o " +
                          tmp + "/gen.csv 2>/dev/null";
        check(exit_code(run(cmd)) == 0, "sweep gen_prob exits 0");
        std::string text = slurp(tmp + "/gen.csv");
        std::istringstream lines(text);
        std::string header;
        std::getline(lines, header);
        check(header.rfind("alpha2,p_plus_to_minus_M5,p_minus_to_minus_M5", 0) == 0,
              "gen_prob CSV header starts with the documented columns");
        check(text == slurp(golden_dir + "/sweep_gen_prob_Q3.csv"),
              "gen_prob output matches the golden file");
    }

    // Teleport report: agreement exit code, schema, determinism.
    {
        std::string cmd = bin +
                          " teleport --N 2 --L 1 --sign minus --alpha2 1 --trials 20000 "
                          "--seed 7 -o " +
                          tmp + "/tele.json 2>/dev/null";
        check(exit_code(run(cmd)) == 0, "teleport N=2 agrees with 1/2 (exit 0)");
        auto j = nlohmann::json::parse(slurp(tmp + "/tele.json"));
        check(j["analytic_probability"].get<double>() == 0.5, "teleport analytic field is 1/2");
        check(j.contains("estimate") && j.contains("std_error") && j.contains("case_counts") &&
                  j.contains("samples"),
              "teleport report schema");
        (void)run(cmd);
        auto j2 = nlohmann::json::parse(slurp(tmp + "/tele.json"));
        check(j == j2, "teleport report is deterministic");
    }
    {
        std::string cmd = bin +
                          " teleport --N 3 --L 1 --sign minus --alpha2 1 --trials 5000 "
                          "--seed 8 -o " +
                          tmp + "/tele3.json 2>/dev/null";
        (void)run(cmd);
        auto j = nlohmann::json::parse(slurp(tmp + "/tele3.json"));
        double analytic = j["analytic_probability"].get<double>();
        check(std::abs(analytic - 0.44134478608690082) < 1e-14,
              "teleport N=3 analytic probability");
    }

    // Asymmetric teleport analytic equals the reduced symmetric network.
    {
        std::string cmd = bin +
                          " teleport --N 2 --L 2 --asymmetric --alpha2 1 --trials 2000 "
                          "--seed 9 -o " +
                          tmp + "/asym.json 2>/dev/null";
        (void)run(cmd);
        auto j = nlohmann::json::parse(slurp(tmp + "/asym.json"));
        check(std::abs(j["analytic_probability"].get<double>() - 0.44134478608690082) < 1e-14,
              "asymmetric N=2 L=2 equals the three-party single-mode value");
    }

    // Generate: tree fidelity report and reduction statistics.
    {
        std::string cmd = bin + " generate --M 8 --scheme tree --alpha2 1 -o " + tmp +
                          "/gen8.json 2>/dev/null";
        check(exit_code(run(cmd)) == 0, "generate M=8 tree exits 0");
        auto j = nlohmann::json::parse(slurp(tmp + "/gen8.json"));
        check(j["fidelity_vs_direct"].get<double>() >= 1.0 - 1e-10,
              "generate M=8 reports unit fidelity");
    }
    {
        std::string cmd = bin +
                          " generate --M 6 --source minus --alpha2 1 --trials 20000 --seed 5 "
                          "--dump-state " +
                          tmp + "/state6.json -o " + tmp + "/gen6.json 2>/dev/null";
        check(exit_code(run(cmd)) == 0, "generate M=6 reduction agrees within 4 sigma");
        auto j = nlohmann::json::parse(slurp(tmp + "/gen6.json"));
        check(j["scheme"] == "reduction" && j.contains("analytic") && j.contains("empirical"),
              "generate reduction report schema");
        catsim::CatState dumped = catsim::load_state(tmp + "/state6.json");
        check(dumped.mode_count() == 6, "dumped generation state has 6 modes");
    }

    // Validate suites.
    check(exit_code(run(bin + " validate --suite identities >/dev/null 2>&1")) == 0,
          "validate identities exits 0");
    check(exit_code(run(bin + " validate --suite limits >/dev/null 2>&1")) == 0,
          "validate limits exits 0");

    // dump-state round-trip through the library parser.
    {
        std::string cmd = bin + " dump-state --kind channel --M 3 --sign minus --alpha2 1 -o " +
                          tmp + "/channel.json 2>/dev/null";
        check(exit_code(run(cmd)) == 0, "dump-state exits 0");
        catsim::CatState state = catsim::load_state(tmp + "/channel.json");
        check(state.mode_count() == 3 && state.terms().size() == 2,
              "dumped channel state parses back");
    }

    // Usage errors exit with 2.
    check(exit_code(run(bin + " sweep --quantity nonsense 2>/dev/null")) == 2,
          "bad quantity exits 2");
    check(exit_code(run(bin + " teleport --N 1 2>/dev/null")) == 2, "bad N exits 2");

    // CATSIM_SEED env var picks the default seed: same seed, same report.
    {
        std::string base = " teleport --N 2 --L 1 --alpha2 1 --trials 3000 -o ";
        (void)run("CATSIM_SEED=42 " + bin + base + tmp + "/env_a.json 2>/dev/null");
        (void)run("CATSIM_SEED=42 " + bin + base + tmp + "/env_b.json 2>/dev/null");
        (void)run("CATSIM_SEED=43 " + bin + base + tmp + "/env_c.json 2>/dev/null");
        auto a = nlohmann::json::parse(slurp(tmp + "/env_a.json"));
        auto b = nlohmann::json::parse(slurp(tmp + "/env_b.json"));
        auto c = nlohmann::json::parse(slurp(tmp + "/env_c.json"));
        check(a == b, "CATSIM_SEED fixes the run");
        check(a["seed"] != c["seed"], "different CATSIM_SEED changes the seed");
    }

    // JSON config file mirrors flags.
    {
        std::ofstream cfg(tmp + "/cfg.json");
        cfg << "{\"quantity\": \"mean_photon\", \"M\": [3], \"start\": 0.5, \"stop\": 1.5, "
               "\"step\": 0.5}\n";
        cfg.close();
        std::string cmd = bin + " sweep --config " + tmp + "/cfg.json -o " + tmp +
                          "/mean_cfg.csv 2>/dev/null";
        check(exit_code(run(cmd)) == 0, "sweep via JSON config exits 0");
        check(slurp(tmp + "/mean_cfg.csv") == slurp(tmp + "/mean.csv"),
              "config file reproduces the flag run");
    }

    std::printf("%s\n", failures == 0 ? "CLI integration: all checks passed"
                                      : "CLI integration: FAILURES");
    return failures;
}
