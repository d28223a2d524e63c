// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vortiq/checkpoint.hpp"
#include "vortiq/config.hpp"
#include "vortiq/indices.hpp"
#include "vortiq/ledger.hpp"
#include "vortiq/solver.hpp"

namespace vortiq {

inline constexpr const char* kLedgerSchema = "vortiq-ledger v1";
inline constexpr const char* kDiagnosticsSchema = "vortiq-diagnostics v1";
inline constexpr const char* kFeasibilitySchema = "vortiq-feasibility v1";

// ---------------------------------------------------------------------------
// In-memory simulation
// ---------------------------------------------------------------------------

struct Snapshot {
    double time = 0.0;
    VectorField u_hat;
};

struct SimResult {
    // One series per q, uniformly strided in time.
    std::vector<std::vector<LedgerRecord>> series;
    std::vector<double> q_list;
    std::vector<Snapshot> snapshots;
    double lambda_used = 0.0;
    bool blow_up = false;
    double blow_up_time = 0.0;
    SolverState final_state;
};

/// Run the solver for the configured interval, recording ledger rows at
/// the record stride and snapshots at the checkpoint stride.
inline SimResult simulate(const RunConfig& cfg, bool keep_snapshots = true) {
    validate(cfg);
    const Grid g(cfg.n_grid);
    SolverState state;
    if (cfg.init == "taylor_green")
        state = init_taylor_green(g, cfg.nu_m2_per_s);
    else if (cfg.init == "taylor_green_2d")
        state = init_taylor_green_2d(g, cfg.nu_m2_per_s);
    else if (cfg.init == "abc")
        state = init_abc(g, cfg.abc_a, cfg.abc_b, cfg.abc_c, cfg.nu_m2_per_s);
    else
        state = init_random_divfree(g, cfg.spectrum_slope, cfg.k_peak,
                                    cfg.amplitude_m_per_s, cfg.seed,
                                    cfg.nu_m2_per_s);
    dealias(state.u_hat);

    SimResult result;
    result.q_list = cfg.q_list;
    result.series.resize(cfg.q_list.size());

    RecordOptions opt;
    opt.with_budget = cfg.with_budget;
    opt.beta = cfg.beta_grid.empty() ? 0.5 : cfg.beta_grid.front();
    opt.rho_fixed = cfg.rho_fixed;
    opt.n_pairs = cfg.n_pairs;
    opt.seed = cfg.seed;
    {
        const PhysicalVectorField w0 = transform_inverse(curl(state.u_hat));
        opt.lambda_threshold = cfg.lambda_threshold > 0.0
                                   ? cfg.lambda_threshold
                                   : 0.5 * max_magnitude(w0);
        if (!(opt.lambda_threshold > 0.0)) opt.lambda_threshold = 1.0;
    }
    result.lambda_used = opt.lambda_threshold;

    auto take_record = [&](const SolverState& s) {
        const auto rows = record(s, cfg.q_list, opt);
        for (std::size_t iq = 0; iq < rows.size(); ++iq)
            result.series[iq].push_back(rows[iq]);
    };
    auto take_snapshot = [&](const SolverState& s) {
        if (keep_snapshots) result.snapshots.push_back({s.time, s.u_hat});
    };

    take_record(state);
    take_snapshot(state);

    long step_index = 0;
    while (state.time < cfg.t_end_s - 1e-12) {
        double dt = cfg.cfl > 0.0 ? cfl_step(state, cfg.cfl) : cfg.dt_s;
        dt = std::min(dt, cfg.t_end_s - state.time);
        try {
            state = step(state, dt, /*do_dealias=*/true, cfg.omega_ceiling);
        } catch (const BlowUpError& e) {
            result.blow_up = true;
            result.blow_up_time = e.time;
            break;
        }
        ++step_index;
        if (step_index % cfg.record_stride == 0 ||
            state.time >= cfg.t_end_s - 1e-12)
            take_record(state);
        if (cfg.checkpoint_stride > 0 && step_index % cfg.checkpoint_stride == 0)
            take_snapshot(state);
    }
    if (keep_snapshots &&
        (result.snapshots.empty() ||
         result.snapshots.back().time < state.time - 1e-12))
        take_snapshot(state);
    result.final_state = std::move(state);
    return result;
}

// ---------------------------------------------------------------------------
// CSV / JSON persistence
// ---------------------------------------------------------------------------

namespace detail_io {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail_io

inline void write_ledger_csv(const std::string& path, const SimResult& sim,
                             const std::string& hash) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("ledger: cannot open " + path);
    os << "# " << kLedgerSchema << " config=" << hash << "\n";
    os << "t,q,Q,grad_term,rhs,K_int,X_int,Y_int,Z_int,J,rho_hat,L1_norm,"
          "energy,enstrophy\n";
    // Row-major over time, then q, matching one row per (t, q).
    const std::size_t rows = sim.series.empty() ? 0 : sim.series[0].size();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t iq = 0; iq < sim.series.size(); ++iq) {
            const LedgerRecord& r = sim.series[iq][i];
            using detail_io::fmt;
            os << fmt(r.t) << ',' << fmt(r.q) << ',' << fmt(r.Q) << ','
               << fmt(r.grad_term) << ',' << fmt(r.rhs) << ',' << fmt(r.K_int)
               << ',' << fmt(r.X_int) << ',' << fmt(r.Y_int) << ','
               << fmt(r.Z_int) << ',' << fmt(r.J) << ',' << fmt(r.rho_hat)
               << ',' << fmt(r.L1_norm) << ',' << fmt(r.energy) << ','
               << fmt(r.enstrophy) << "\n";
        }
    }
}

/// Parse a ledger CSV; rejects files whose schema line is missing or names
/// a different version.
inline std::vector<LedgerRecord> read_ledger_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("ledger: cannot open " + path);
    std::string line;
    if (!std::getline(is, line) ||
        line.rfind(std::string("# ") + kLedgerSchema, 0) != 0)
        throw std::runtime_error("ledger: unsupported schema in " + path);
    std::getline(is, line);  // column header

    std::vector<LedgerRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 14)
            throw std::runtime_error("ledger: malformed row in " + path);
        LedgerRecord r;
        r.t = v[0]; r.q = v[1]; r.Q = v[2]; r.grad_term = v[3]; r.rhs = v[4];
        r.K_int = v[5]; r.X_int = v[6]; r.Y_int = v[7]; r.Z_int = v[8];
        r.J = v[9]; r.rho_hat = v[10]; r.L1_norm = v[11]; r.energy = v[12];
        r.enstrophy = v[13];
        r.has_budget = r.K_int != 0.0 || r.J != 0.0;
        out.push_back(r);
    }
    return out;
}

inline std::uint64_t fnv1a_bytes(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Persist a finished simulation: checkpoints, ledger CSV, JSON summary.
/// Returns the run directory.
inline std::string write_run(const std::string& out_dir, const RunConfig& cfg,
                             const SimResult& sim, double runtime_s = 0.0) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string hash = config_hash(cfg);

    std::vector<std::string> checkpoint_files;
    for (std::size_t i = 0; i < sim.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "checkpoint_%04zu.vqf", i);
        const std::string path = (fs::path(out_dir) / name).string();
        write_checkpoint(path, sim.snapshots[i].u_hat, sim.snapshots[i].time,
                         cfg.nu_m2_per_s);
        checkpoint_files.push_back(name);
    }
    write_ledger_csv((fs::path(out_dir) / "ledger.csv").string(), sim, hash);

    // Content hash of the initial data in checkpoint serialization.
    std::string init_hash = "n/a";
    if (!sim.snapshots.empty()) {
        std::ostringstream buf(std::ios::binary);
        buf.write(kCheckpointMagic, 8);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < sim.snapshots[0].u_hat[c].size(); ++i) {
                detail::put_f64(buf, sim.snapshots[0].u_hat[c][i].real());
                detail::put_f64(buf, sim.snapshots[0].u_hat[c][i].imag());
            }
        char hex[17];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a_bytes(buf.str())));
        init_hash = hex;
    }

    nlohmann::json j;
    j["schema"] = "vortiq-run v1";
    j["config_hash"] = hash;
    j["config"] = to_text(cfg);
    j["rng"] = CounterRng::name();
    j["initial_data_hash"] = init_hash;
    j["lambda_threshold_used"] = sim.lambda_used;
    j["blow_up"] = sim.blow_up;
    if (sim.blow_up) j["blow_up_time"] = sim.blow_up_time;
    j["checkpoints"] = checkpoint_files;
    j["runtime_seconds"] = runtime_s;
    nlohmann::json per_q = nlohmann::json::array();
    for (std::size_t iq = 0; iq < sim.series.size(); ++iq) {
        const auto& s = sim.series[iq];
        nlohmann::json e;
        e["q"] = sim.q_list[iq];
        e["records"] = s.size();
        if (!s.empty()) {
            e["Q0"] = s.front().Q;
            e["Q_final"] = s.back().Q;
            double qmax = 0.0;
            for (const auto& r : s) qmax = std::max(qmax, r.Q);
            e["Q_max"] = qmax;
            e["spacetime_lq"] = spacetime_norm(s, sim.q_list[iq]).lq;
            if (s.size() >= 3 && !sim.blow_up) {
                const auto slack = evolution_slack(s, cfg.nu_m2_per_s);
                double mn = slack.front();
                for (double v : slack) mn = std::min(mn, v);
                e["min_slack"] = mn;
            }
        }
        per_q.push_back(e);
    }
    j["per_q"] = per_q;

    std::ofstream js((fs::path(out_dir) / "run.json").string());
    js << j.dump(2) << "\n";
    return out_dir;
}

// ---------------------------------------------------------------------------
// CLI-level commands
// ---------------------------------------------------------------------------

inline std::string cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    SimResult sim = simulate(cfg, /*keep_snapshots=*/true);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return write_run(out_dir, cfg, sim, secs);
}

struct DiagnoseOptions {
    double q = 2.0;
    double beta = 0.5;
    double lambda_threshold = 0.0;  // <= 0: 0.5 max|omega| per checkpoint
    double rho_fixed = 0.0;         // <= 0: fit
    double c_fit = 1.0;             // calibrated J constant to report margins with
    std::size_t n_pairs = 100000;
    std::uint64_t seed = 1;
};

/// Re-derive alignment diagnostics from the checkpoints of a finished run.
inline std::string cmd_diagnose(const std::string& run_dir,
                                const DiagnoseOptions& opt) {
    namespace fs = std::filesystem;
    const fs::path dir(run_dir);
    if (!fs::exists(dir / "run.json"))
        throw std::runtime_error("diagnose: no run.json under " + run_dir);
    nlohmann::json meta;
    {
        std::ifstream is((dir / "run.json").string());
        is >> meta;
    }

    const std::string out_path = (dir / "diagnostics.csv").string();
    std::ofstream os(out_path);
    os << "# " << kDiagnosticsSchema
       << " config=" << meta.value("config_hash", std::string("?")) << "\n";
    os << "t,q,lambda_threshold,beta,lambda_exp,rho_hat,K_int,X_int,Y_int,Z_int,"
          "J,z_bound_margin,lemma_j_margin,super_count\n";

    for (const auto& name : meta["checkpoints"]) {
        const Checkpoint ck = read_checkpoint((dir / name.get<std::string>()).string());
        const PhysicalVectorField omega = transform_inverse(curl(ck.u_hat));
        const double lambda = opt.lambda_threshold > 0.0
                                  ? opt.lambda_threshold
                                  : std::max(0.5 * max_magnitude(omega), 1e-300);
        const CutoffParams cut(lambda);
        XyzBudget b = xyz_budget(omega, cut, opt.q);

        double rho = opt.rho_fixed;
        if (!(rho > 0.0)) {
            auto samples = sample_angles(omega, opt.n_pairs, lambda, opt.seed);
            rho = samples.empty() ? std::numeric_limits<double>::infinity()
                                  : holder_fit(samples, opt.beta);
        }
        const double lambda_exp = 3.0 - opt.beta;
        double Jv = std::numeric_limits<double>::quiet_NaN();
        double z_margin = std::numeric_limits<double>::quiet_NaN();
        double j_margin = std::numeric_limits<double>::quiet_NaN();
        if (std::isfinite(rho)) {
            Jv = j_quantity(omega, opt.q, rho, lambda_exp);
            z_margin = 1.05 * opt.q * Jv - std::abs(b.Z_int);

            // Exponent package at the delta matching this beta, with p at
            // the lower end of its admissible range (where sigma = q).
            const double delta = 1.0 - opt.beta;
            const PRange pr = p_range(opt.q, delta);
            const double p = std::min(std::max(pr.lo, 1.0 + 1e-9), 3.0 - 1e-9);
            const IndexSolution idx = derive_indices<double>(opt.q, delta, p);
            const double grad = grad_pow_norm(omega, opt.q);
            const double Q = std::pow(lq_norm(omega, opt.q), opt.q);
            const double gamma_l1 = lq_norm(omega, 1.0);  // snapshot stand-in for Gamma
            const double pre = std::pow(gamma_l1, idx.theta / (1.0 - idx.alpha)) *
                               std::pow(ck.nu, -idx.alpha / (1.0 - idx.alpha)) *
                               std::pow(rho, -1.0 / idx.alpha);
            j_margin = (opt.q - 1.0) / (opt.q * opt.q) * ck.nu * grad +
                       opt.c_fit / opt.q * pre * std::pow(Q, 1.0 + idx.gamma) - Jv;
        }
        using detail_io::fmt;
        os << fmt(ck.time) << ',' << fmt(opt.q) << ',' << fmt(lambda) << ','
           << fmt(opt.beta) << ',' << fmt(lambda_exp) << ',' << fmt(rho) << ','
           << fmt(b.K_int) << ',' << fmt(b.X_int) << ',' << fmt(b.Y_int) << ','
           << fmt(b.Z_int) << ',' << fmt(Jv) << ',' << fmt(z_margin) << ','
           << fmt(j_margin) << ',' << fmt(double(b.super_count)) << "\n";
    }
    return out_path;
}

/// Feasibility table over a list of q values; CSV plus JSON sidecar.
inline std::string cmd_indices(const std::vector<double>& q_values,
                               const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string path = (fs::path(out_dir) / "feasibility.csv").string();
    std::ofstream os(path);
    os << "# " << kFeasibilitySchema << "\n";
    os << "q,theorem_applies,delta_max,beta_threshold_open,beta_threshold_closed,"
          "delta_sup_bruteforce,witness_p,witness_sigma,witness_theta,"
          "witness_alpha,witness_gamma\n";
    nlohmann::json rows = nlohmann::json::array();
    for (double q : q_values) {
        const FeasibilityRow r = feasibility_row(q);
        using detail_io::fmt;
        os << fmt(r.q) << ',' << (r.theorem_applies ? 1 : 0) << ','
           << fmt(r.delta_max_value) << ',' << fmt(r.beta_threshold_open) << ','
           << fmt(r.beta_threshold_closed) << ',' << fmt(r.delta_sup_bruteforce)
           << ',' << fmt(r.witness_p) << ',' << fmt(r.witness_sigma) << ','
           << fmt(r.witness_theta) << ',' << fmt(r.witness_alpha) << ','
           << fmt(r.witness_gamma) << "\n";
        nlohmann::json e;
        e["q"] = r.q;
        e["theorem_applies"] = r.theorem_applies;
        e["delta_max"] = r.delta_max_value;
        e["beta_threshold_open"] = r.beta_threshold_open;
        e["beta_threshold_closed"] = r.beta_threshold_closed;
        e["delta_sup_bruteforce"] = r.delta_sup_bruteforce;
        rows.push_back(e);
    }
    std::ofstream js((fs::path(out_dir) / "feasibility.json").string());
    js << rows.dump(2) << "\n";
    return path;
}

}  // namespace vortiq
