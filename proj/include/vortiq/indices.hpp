// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace vortiq {

using Rational = boost::rational<long long>;

namespace detail_idx {
template <typename T>
constexpr T from_int(int v) { return T(v); }
}  // namespace detail_idx

/// Exponent package for one choice of (q, delta, p):
///   lambda = 2 + delta,  beta = 1 - delta,
///   alpha  = (3/2)(1 - 1/p)            (Sobolev interpolation index)
///   sigma  = 3p / ((4-delta)p - 3)     (from 1/sigma + 1/p + lambda/3 = 2)
///   theta  = ((4-delta)pq - 3(p+q)) / (3p(q-1))   (from 1/sigma = theta + (1-theta)/q)
///   gamma  = (1-theta) / (q(1-alpha))
/// feasible requires p in (1,3), sigma in [1,q], theta in [0,1],
/// alpha in (0,1); growth_ok additionally requires gamma <= 1.
template <typename T>
struct IndexSolutionT {
    T q{}, delta{}, lambda_exp{}, beta{};
    T p{}, sigma{}, theta{}, alpha{}, gamma{};
    bool growth_ok = false;  // 1 - theta <= q (1 - alpha), i.e. gamma <= 1
    bool feasible = false;   // all index ranges satisfied and growth_ok
};

using IndexSolution = IndexSolutionT<double>;
using ExactIndexSolution = IndexSolutionT<Rational>;

/// The exponent compatibility condition 1 - theta <= q (1 - alpha);
/// equivalent to gamma <= 1.
template <typename T>
bool growth_exponent_ok(const T& theta, const T& alpha, const T& q) {
    return detail_idx::from_int<T>(1) - theta <= q * (detail_idx::from_int<T>(1) - alpha);
}

template <typename T>
IndexSolutionT<T> derive_indices(const T& q, const T& delta, const T& p) {
    const T one = detail_idx::from_int<T>(1);
    const T two = detail_idx::from_int<T>(2);
    const T three = detail_idx::from_int<T>(3);
    const T four = detail_idx::from_int<T>(4);

    if (!(q > one)) throw std::invalid_argument("derive_indices: q must exceed 1");
    if (delta < T(0) || !(delta < one))
        throw std::invalid_argument("derive_indices: delta must lie in [0,1)");

    IndexSolutionT<T> s;
    s.q = q;
    s.delta = delta;
    s.lambda_exp = two + delta;
    s.beta = one - delta;
    s.p = p;

    const bool p_in_range = p > one && p < three;
    if (!p_in_range) {
        s.feasible = false;
        return s;
    }

    s.alpha = (three / two) * (one - one / p);
    s.sigma = three * p / ((four - delta) * p - three);
    s.theta = ((four - delta) * p * q - three * (p + q)) / (three * p * (q - one));
    s.gamma = (one - s.theta) / (q * (one - s.alpha));
    s.growth_ok = growth_exponent_ok(s.theta, s.alpha, q);

    const bool sigma_ok = s.sigma >= one && s.sigma <= q;
    const bool theta_ok = s.theta >= T(0) && s.theta <= one;
    const bool alpha_ok = s.alpha > T(0) && s.alpha < one;
    s.feasible = sigma_ok && theta_ok && alpha_ok && s.growth_ok;
    return s;
}

/// Upper bound on delta equivalent to the exponent condition:
/// U(p,q) = (3q-5)(3-p) / (2p).
template <typename T>
T delta_upper_bound(const T& p, const T& q) {
    const T three = detail_idx::from_int<T>(3);
    const T five = detail_idx::from_int<T>(5);
    return (three * q - five) * (three - p) / (detail_idx::from_int<T>(2) * p);
}

/// Admissible p interval (1,3) intersect [3q/((4-delta)q-3), 3).
struct PRange {
    double lo = 1.0;
    double hi = 3.0;
    bool lo_inclusive = false;  // true when the sigma constraint binds
    bool empty = false;
};

inline PRange p_range(double q, double delta) {
    if (!(q > 1.0)) throw std::invalid_argument("p_range: q must exceed 1");
    if (delta < 0.0 || delta >= 1.0)
        throw std::invalid_argument("p_range: delta must lie in [0,1)");
    PRange r;
    const double lower = 3.0 * q / ((4.0 - delta) * q - 3.0);
    if (lower > 1.0) {
        r.lo = lower;
        r.lo_inclusive = true;
    }
    if (r.lo >= 3.0) r.empty = true;
    return r;
}

/// Largest admissible delta: min{1, 3 - 5/q}, defined for q > 5/3. The
/// value 1 means every delta in [0,1) is admissible (the lambda < 3
/// constraint is then the only active one).
inline double delta_max(double q) {
    if (!(q > 5.0 / 3.0)) throw std::invalid_argument("delta_max: requires q > 5/3");
    return std::min(1.0, 3.0 - 5.0 / q);
}

/// Holder-exponent threshold max{0, 5/q - 2}. The open variant requires
/// beta strictly above it; the closed variant (from the case analysis,
/// where the boundary is attained) admits equality. Both are reported.
struct BetaThreshold {
    double open_variant;    // beta must exceed this strictly
    double closed_variant;  // beta may equal this
};

inline BetaThreshold beta_threshold(double q) {
    if (!(q > 5.0 / 3.0))
        throw std::invalid_argument("beta_threshold: requires q > 5/3");
    const double v = std::max(0.0, 5.0 / q - 2.0);
    return {v, v};
}

/// Independent feasibility oracle: scan p on a uniform grid over the
/// admissible interval and report whether any p yields sigma in [1,q],
/// theta in [0,1], alpha in (0,1) and the exponent condition. Open
/// endpoints are approached to within 1e-6.
inline bool feasible_region_bruteforce(double q, double delta,
                                       std::size_t grid_steps = 2000) {
    if (grid_steps < 1000)
        throw std::invalid_argument("feasible_region_bruteforce: use >= 1000 steps");
    PRange r = p_range(q, delta);
    if (r.empty) return false;
    const double lo = r.lo_inclusive ? r.lo : r.lo + 1e-6;
    const double hi = 3.0 - 1e-6;
    if (lo > hi) return false;
    const double tol = 1e-12 * std::max(1.0, q);
    for (std::size_t i = 0; i < grid_steps; ++i) {
        const double p = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(grid_steps - 1);
        IndexSolution s = derive_indices<double>(q, delta, p);
        if (!(s.p > 1.0 && s.p < 3.0)) continue;
        const bool sigma_ok = s.sigma >= 1.0 - tol && s.sigma <= q + tol;
        const bool theta_ok = s.theta >= -tol && s.theta <= 1.0 + tol;
        const bool alpha_ok = s.alpha > 0.0 && s.alpha < 1.0;
        if (sigma_ok && theta_ok && alpha_ok && s.growth_ok) return true;
    }
    return false;
}

/// One row of the feasibility table emitted by the CLI.
struct FeasibilityRow {
    double q = 0.0;
    bool theorem_applies = false;  // q > 5/3
    double delta_max_value = std::numeric_limits<double>::quiet_NaN();
    double beta_threshold_open = std::numeric_limits<double>::quiet_NaN();
    double beta_threshold_closed = std::numeric_limits<double>::quiet_NaN();
    double delta_sup_bruteforce = std::numeric_limits<double>::quiet_NaN();
    // Witness package at the largest feasible delta found by the scan.
    double witness_p = std::numeric_limits<double>::quiet_NaN();
    double witness_sigma = std::numeric_limits<double>::quiet_NaN();
    double witness_theta = std::numeric_limits<double>::quiet_NaN();
    double witness_alpha = std::numeric_limits<double>::quiet_NaN();
    double witness_gamma = std::numeric_limits<double>::quiet_NaN();
};

inline FeasibilityRow feasibility_row(double q, std::size_t delta_steps = 101,
                                      std::size_t p_steps = 2000) {
    FeasibilityRow row;
    row.q = q;
    row.theorem_applies = q > 5.0 / 3.0;
    if (row.theorem_applies) {
        row.delta_max_value = delta_max(q);
        const BetaThreshold bt = beta_threshold(q);
        row.beta_threshold_open = bt.open_variant;
        row.beta_threshold_closed = bt.closed_variant;
    }

    double best_delta = -1.0;
    for (std::size_t i = 0; i < delta_steps; ++i) {
        const double delta =
            0.999999 * static_cast<double>(i) / static_cast<double>(delta_steps - 1);
        if (feasible_region_bruteforce(q, delta, p_steps)) best_delta = delta;
    }
    if (best_delta >= 0.0) {
        row.delta_sup_bruteforce = best_delta;
        // Recover a witness p at the best delta.
        PRange r = p_range(q, best_delta);
        const double lo = r.lo_inclusive ? r.lo : r.lo + 1e-6;
        const double hi = 3.0 - 1e-6;
        const double tol = 1e-12 * std::max(1.0, q);
        for (std::size_t i = 0; i < p_steps; ++i) {
            const double p = lo + (hi - lo) * static_cast<double>(i) /
                                      static_cast<double>(p_steps - 1);
            IndexSolution s = derive_indices<double>(q, best_delta, p);
            const bool sigma_ok = s.sigma >= 1.0 - tol && s.sigma <= q + tol;
            const bool theta_ok = s.theta >= -tol && s.theta <= 1.0 + tol;
            if (s.p > 1.0 && s.p < 3.0 && sigma_ok && theta_ok && s.alpha > 0.0 &&
                s.alpha < 1.0 && s.growth_ok) {
                row.witness_p = s.p;
                row.witness_sigma = s.sigma;
                row.witness_theta = s.theta;
                row.witness_alpha = s.alpha;
                row.witness_gamma = s.gamma;
                break;
            }
        }
    }
    return row;
}

}  // namespace vortiq
