// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
//
// Experiment driver: simulate decaying periodic flows, re-derive the
// alignment diagnostics from checkpoints, print the admissible-index
// table, and run the verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "vortiq/experiment.hpp"
#include "vortiq/verify.hpp"

namespace {

vortiq::RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return vortiq::parse_config_text(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral periodic-box flow solver with "
                 "vorticity-alignment diagnostics"};
    app.require_subcommand(1);

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate", "run a configured simulation");
    std::string sim_config, sim_out = "runs/run";
    std::uint64_t sim_seed = 0;
    sim->add_option("--config", sim_config, "config file (key = value)")
        ->required();
    sim->add_option("--out", sim_out, "output directory");
    sim->add_option("--seed", sim_seed, "override the config seed");

    // --- diagnose ---
    auto* diag = app.add_subcommand("diagnose",
                                    "recompute alignment diagnostics from a run");
    std::string diag_dir;
    vortiq::DiagnoseOptions dopt;
    diag->add_option("--run", diag_dir, "run directory")->required();
    diag->add_option("--q", dopt.q, "Lebesgue exponent q");
    diag->add_option("--beta", dopt.beta, "Holder exponent beta");
    diag->add_option("--lambda", dopt.lambda_threshold,
                     "cutoff threshold (<= 0: half of max |omega|)");
    diag->add_option("--rho", dopt.rho_fixed, "fixed rho (<= 0: fit from angles)");
    diag->add_option("--cfit", dopt.c_fit, "calibrated constant for the J margin");
    diag->add_option("--pairs", dopt.n_pairs, "angle sample pairs");
    diag->add_option("--seed", dopt.seed, "sampling seed");

    // --- indices ---
    auto* idx = app.add_subcommand("indices", "admissible-parameter table");
    std::vector<double> idx_q{1.7, 2.0, 2.5, 3.0, 4.0, 10.0};
    std::string idx_out = "runs/indices";
    idx->add_option("--q", idx_q, "q values");
    idx->add_option("--out", idx_out, "output directory");

    // --- verify ---
    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    std::string ver_out;
    ver->add_option("--out", ver_out, "write machine-readable results JSON here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            vortiq::RunConfig cfg = load_config(sim_config);
            if (sim_seed != 0) cfg.seed = sim_seed;
            const std::string dir = vortiq::cmd_simulate(cfg, sim_out);
            std::cout << "run written to " << dir << "\n";
        } else if (diag->parsed()) {
            const std::string csv = vortiq::cmd_diagnose(diag_dir, dopt);
            std::cout << "diagnostics written to " << csv << "\n";
        } else if (idx->parsed()) {
            const std::string csv = vortiq::cmd_indices(idx_q, idx_out);
            std::cout << "feasibility table written to " << csv << "\n";
        } else if (ver->parsed()) {
            const auto results = vortiq::run_acceptance_suite();
            bool all = true;
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : results) {
                std::printf("[%s] %-26s %s (%.2fs)\n", r.pass ? "PASS" : "FAIL",
                            r.id.c_str(), r.detail.c_str(), r.runtime_s);
                all = all && r.pass;
                j.push_back({{"id", r.id},
                             {"pass", r.pass},
                             {"detail", r.detail},
                             {"runtime_s", r.runtime_s}});
            }
            if (!ver_out.empty()) {
                std::ofstream os(ver_out);
                os << nlohmann::json{{"all_pass", all}, {"criteria", j}}.dump(2)
                   << "\n";
            }
            std::printf("%s\n", all ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
