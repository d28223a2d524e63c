// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vortiq/alignment.hpp"
#include "vortiq/norms.hpp"
#include "vortiq/solver.hpp"
#include "vortiq/strain.hpp"

namespace vortiq {

/// Snapshot accounting for one (t, q): every ingredient of the L^q
/// vorticity evolution inequality
///   dQ/dt + (4(q-1)/q) nu int |grad(|w|^{q/2})|^2 <= q int |w|^{q-2} S:(w@w).
struct LedgerRecord {
    double t = 0.0;
    double q = 0.0;
    double Q = 0.0;          // int |omega|^q
    double grad_term = 0.0;  // int |grad(|omega|^{q/2})|^2
    double rhs = 0.0;        // q int |omega|^{q-2} S:(omega tensor omega)
    double X_int = 0.0, Y_int = 0.0, Z_int = 0.0, K_int = 0.0;
    double J = 0.0;
    double rho_hat = 0.0;
    double L1_norm = 0.0;
    double energy = 0.0;
    double enstrophy = 0.0;
    bool has_budget = false;
};

/// Optional per-record alignment diagnostics.
struct RecordOptions {
    bool with_budget = false;
    double lambda_threshold = 1.0;  // cutoff Lambda for the X/Y/Z split
    double beta = 0.5;              // Holder exponent; lambda_exp = 3 - beta
    double rho_fixed = 0.0;         // > 0: use this rho in J; else fit rho
    std::size_t n_pairs = 20000;
    std::uint64_t seed = 1;
};

/// Compute a ledger record per q on one solver snapshot.
inline std::vector<LedgerRecord> record(const SolverState& state,
                                        const std::vector<double>& q_list,
                                        const RecordOptions& opt = {}) {
    const Grid& g = state.u_hat.grid();
    const VectorField omega_hat = curl(state.u_hat);
    const PhysicalVectorField omega = transform_inverse(omega_hat);
    const PhysicalStrainField strain = to_physical(strain_spectral(state.u_hat));
    const PhysicalField mag = magnitude(omega);

    const double e = energy(state);
    const double z = 0.5 * l2_norm_sq_spectral(omega_hat);
    const double l1 = lq_norm(omega, 1.0);

    std::vector<LedgerRecord> out;
    out.reserve(q_list.size());
    for (double q : q_list) {
        if (!(q > 1.0)) throw std::invalid_argument("record: q must exceed 1");
        LedgerRecord r;
        r.t = state.time;
        r.q = q;
        r.energy = e;
        r.enstrophy = z;
        r.L1_norm = l1;

        double Q = 0.0, rhs = 0.0;
        for (std::size_t i = 0; i < mag.size(); ++i) {
            const double m = mag[i];
            Q += std::pow(m, q);
            if (m > 0.0) {
                const std::array<double, 3> w{omega[0][i], omega[1][i], omega[2][i]};
                rhs += std::pow(m, q - 2.0) * sym_contract(strain.at(i), w, w);
            }
        }
        r.Q = Q * g.cell_volume();
        r.rhs = q * rhs * g.cell_volume();
        r.grad_term = grad_pow_norm(omega, q);

        if (opt.with_budget) {
            const CutoffParams cut(opt.lambda_threshold);
            XyzBudget b = xyz_budget(omega, cut, q);
            r.X_int = b.X_int;
            r.Y_int = b.Y_int;
            r.Z_int = b.Z_int;
            r.K_int = b.K_int;

            double rho = opt.rho_fixed;
            if (!(rho > 0.0)) {
                auto samples = sample_angles(omega, opt.n_pairs,
                                             opt.lambda_threshold, opt.seed);
                rho = samples.empty()
                          ? std::numeric_limits<double>::infinity()
                          : holder_fit(samples, opt.beta);
            }
            r.rho_hat = rho;
            if (std::isfinite(rho))
                r.J = j_quantity(omega, q, rho, 3.0 - opt.beta);
            r.has_budget = true;
        }
        out.push_back(r);
    }
    return out;
}

/// Slack of the evolution inequality on a uniformly strided time series:
///   slack(t) = rhs(t) - [dQ/dt + (4(q-1)/q) nu grad_term(t)],
/// with centered differences inside and one-sided second-order stencils
/// at the ends. Nonnegative up to discretization error.
inline std::vector<double> evolution_slack(const std::vector<LedgerRecord>& series,
                                           double nu) {
    const std::size_t n = series.size();
    if (n < 3)
        throw std::invalid_argument("evolution_slack: need at least 3 records");
    const double dt = series[1].t - series[0].t;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double d = series[i + 1].t - series[i].t;
        if (std::abs(d - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw std::invalid_argument("evolution_slack: non-uniform stride");
    }
    const double q = series[0].q;
    const double visc = 4.0 * (q - 1.0) / q * nu;

    std::vector<double> slack(n);
    auto dQ = [&](std::size_t i) {
        if (i == 0)
            return (-3.0 * series[0].Q + 4.0 * series[1].Q - series[2].Q) / (2.0 * dt);
        if (i == n - 1)
            return (3.0 * series[n - 1].Q - 4.0 * series[n - 2].Q + series[n - 3].Q) /
                   (2.0 * dt);
        return (series[i + 1].Q - series[i - 1].Q) / (2.0 * dt);
    };
    for (std::size_t i = 0; i < n; ++i)
        slack[i] = series[i].rhs - dQ(i) - visc * series[i].grad_term;
    return slack;
}

/// Space-time L^q accounting over a record series.
struct SpacetimeNorm {
    double lq = 0.0;          // (int Q dt)^{1/q}
    double integral_Q = 0.0;  // int Q dt (trapezoid)
    bool degenerate = false;  // fewer than 2 records
};

inline SpacetimeNorm spacetime_norm(const std::vector<LedgerRecord>& series,
                                    double q) {
    SpacetimeNorm s;
    if (series.size() < 2) {
        s.degenerate = true;
        return s;
    }
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        const double dt = series[i + 1].t - series[i].t;
        s.integral_Q += 0.5 * dt * (series[i].Q + series[i + 1].Q);
    }
    s.lq = std::pow(s.integral_Q, 1.0 / q);
    return s;
}

/// Trapezoid integral of Q^gamma over the series.
inline double integral_q_gamma(const std::vector<LedgerRecord>& series,
                               double gamma) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        const double dt = series[i + 1].t - series[i].t;
        acc += 0.5 * dt *
               (std::pow(series[i].Q, gamma) + std::pow(series[i + 1].Q, gamma));
    }
    return acc;
}

/// Exponent and constant package of the a-priori bound
///   Q(t) <= Q0 exp{ C (Lambda + nu^-3 Lambda^2 Gamma^2) T
///                   + C T^{1-gamma} M^{q gamma} Gamma^{theta/(1-alpha)}
///                     nu^{-alpha/(1-alpha)} rho^{-1/alpha} },
/// with M the space-time L^q norm of the vorticity. The paper-side
/// constants are merged into the single calibrated scalar C_fit.
struct GronwallParams {
    double q = 2.0;
    double Lambda = 1.0;
    double Gamma = 1.0;
    double rho = 1.0;
    double nu = 1.0;
    double theta = 0.0;
    double alpha = 0.5;
    double gamma = 1.0;
    double T = 1.0;
    double C_fit = 1.0;
};

inline void validate(const GronwallParams& p) {
    if (p.gamma > 1.0 + 1e-15)
        throw std::invalid_argument("gronwall: gamma must satisfy gamma <= 1");
    if (!(p.alpha > 0.0 && p.alpha < 1.0))
        throw std::invalid_argument("gronwall: alpha must lie in (0,1)");
    if (p.theta < 0.0 || p.theta > 1.0)
        throw std::invalid_argument("gronwall: theta must lie in [0,1]");
    if (!(p.nu > 0.0 && p.rho > 0.0 && p.T >= 0.0))
        throw std::invalid_argument("gronwall: nu, rho must be positive, T >= 0");
}

/// Alignment prefactor Gamma^{theta/(1-alpha)} nu^{-alpha/(1-alpha)} rho^{-1/alpha}.
inline double alignment_prefactor(const GronwallParams& p) {
    return std::pow(p.Gamma, p.theta / (1.0 - p.alpha)) *
           std::pow(p.nu, -p.alpha / (1.0 - p.alpha)) *
           std::pow(p.rho, -1.0 / p.alpha);
}

inline double gronwall_bound(const GronwallParams& p, double Q0,
                             double spacetime_lq_norm) {
    validate(p);
    const double linear = p.C_fit * (p.Lambda + std::pow(p.nu, -3.0) *
                                                    p.Lambda * p.Lambda *
                                                    p.Gamma * p.Gamma) * p.T;
    const double nonlinear = p.C_fit * std::pow(p.T, 1.0 - p.gamma) *
                             std::pow(spacetime_lq_norm, p.q * p.gamma) *
                             alignment_prefactor(p);
    return Q0 * std::exp(linear + nonlinear);
}

/// Smallest C such that
///   dQ/dt + (q-1)/q nu grad_term
///     <= C {Lambda + nu^-3 Lambda^2 Gamma^2 + prefactor Q^gamma} Q
/// holds at every interior record of every calibration series.
inline double calibrate_growth_constant(
    const std::vector<std::vector<LedgerRecord>>& series_set,
    const GronwallParams& base) {
    double c = 0.0;
    for (const auto& series : series_set) {
        if (series.size() < 3) continue;
        GronwallParams p = base;
        for (const auto& r : series) p.Gamma = std::max(p.Gamma, r.L1_norm);
        const double pre = alignment_prefactor(p);
        for (std::size_t i = 1; i + 1 < series.size(); ++i) {
            const double dt = series[i + 1].t - series[i - 1].t;
            const double dQ = (series[i + 1].Q - series[i - 1].Q) / dt;
            const double lhs =
                dQ + (p.q - 1.0) / p.q * p.nu * series[i].grad_term;
            if (lhs <= 0.0) continue;
            const double bracket =
                p.Lambda +
                std::pow(p.nu, -3.0) * p.Lambda * p.Lambda * p.Gamma * p.Gamma +
                pre * std::pow(series[i].Q, p.gamma);
            c = std::max(c, lhs / (bracket * series[i].Q));
        }
    }
    return c;
}

/// Smallest C closing the J bound
///   J <= (q-1)/q^2 nu grad_term + C prefactor q^{-1} Q^{1+gamma}
/// over the calibration series (records that carry budget data). The rho
/// entering the prefactor is the one each record's J was computed with.
inline double calibrate_j_constant(
    const std::vector<std::vector<LedgerRecord>>& series_set,
    const GronwallParams& base) {
    double c = 0.0;
    for (const auto& series : series_set) {
        GronwallParams p = base;
        for (const auto& r : series) p.Gamma = std::max(p.Gamma, r.L1_norm);
        const double gamma_nu = std::pow(p.Gamma, p.theta / (1.0 - p.alpha)) *
                                std::pow(p.nu, -p.alpha / (1.0 - p.alpha));
        for (const auto& r : series) {
            if (!r.has_budget || !std::isfinite(r.J)) continue;
            const double rho = r.rho_hat > 0.0 && std::isfinite(r.rho_hat)
                                   ? r.rho_hat
                                   : p.rho;
            const double pre = gamma_nu * std::pow(rho, -1.0 / p.alpha);
            const double excess =
                r.J - (p.q - 1.0) / (p.q * p.q) * p.nu * r.grad_term;
            if (excess <= 0.0) continue;
            c = std::max(c, excess * p.q / (pre * std::pow(r.Q, 1.0 + p.gamma)));
        }
    }
    return c;
}

}  // namespace vortiq
