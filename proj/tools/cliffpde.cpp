// Command-line driver: runs a verification suite and writes a JSON report.
#include <omp.h>

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cliffpde/config.hpp"
#include "cliffpde/report.hpp"
#include "cliffpde/suites.hpp"

namespace {

const std::vector<std::string> kCommands = {"identities", "symbols",     "gauge-solve",
                                            "lorenz",     "hodge",       "nonlinear-hodge",
                                            "compensation", "kernel",    "all"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cliffpde: spectral verification lab for Clifford-algebra field equations"};

    std::string command;
    std::string config_path;
    std::uint64_t seed = 0;
    int grid_n = 0;
    int dim = 0;
    std::string out_path;

    app.add_option("command", command, "suite to run")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("--config", config_path, "key = value configuration file");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
    auto* n_opt = app.add_option("--grid-n", grid_n, "grid points per axis (even, >= 8)");
    auto* d_opt = app.add_option("--dim", dim, "space dimension")->check(CLI::IsMember({3, 4}));
    auto* out_opt = app.add_option("--out", out_path, "report output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (const char* threads = std::getenv("CLIFFPDE_THREADS")) {
        const int n = std::atoi(threads);
        if (n > 0) omp_set_num_threads(n);
    }

    cliffpde::ExperimentConfig cfg;
    try {
        if (!config_path.empty()) cfg = cliffpde::load_config(config_path);
        // Command-line flags override the configuration file.
        cfg.command = command;
        if (seed_opt->count()) cfg.seed = seed;
        if (n_opt->count()) cfg.N = grid_n;
        if (d_opt->count()) cfg.d = dim;
        if (out_opt->count()) cfg.out_path = out_path;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        cliffpde::ExperimentReport rep = cliffpde::run_suite(cfg);
        for (const auto& c : rep.checks)
            std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name << "  value=" << c.value
                      << "  threshold=" << c.threshold << "\n";
        rep.write(cfg.out_path);
        std::cout << (rep.all_pass() ? "all checks passed" : "CHECK FAILURES PRESENT") << " ("
                  << rep.checks.size() << " checks, report: " << cfg.out_path << ")\n";
        return rep.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
