// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vortiq/fft.hpp"
#include "vortiq/grid.hpp"
#include "vortiq/norms.hpp"
#include "vortiq/rng.hpp"
#include "vortiq/strain.hpp"

namespace vortiq {

// ---------------------------------------------------------------------------
// Smooth cutoff
// ---------------------------------------------------------------------------

namespace detail_chi {
inline double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace detail_chi

/// C^infinity transition profile: chi = 1 on [0,1], 0 on [2,inf), strictly
/// monotone in between. chi(s) = f(2-s) / (f(2-s) + f(s-1)), f(t) = e^{-1/t}.
inline double chi(double s) {
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    const double a = detail_chi::bump(2.0 - s);
    const double b = detail_chi::bump(s - 1.0);
    return a / (a + b);
}

/// Magnitude threshold of the high/low vorticity split.
struct CutoffParams {
    double lambda_threshold = 1.0;

    explicit CutoffParams(double lambda) : lambda_threshold(lambda) {
        if (!(lambda > 0.0))
            throw std::invalid_argument("CutoffParams: lambda must be positive");
    }
};

/// Holder hypothesis |sin phi| <= |x-y|^beta / rho on the super-threshold set.
struct HolderParams {
    double rho = 1.0;
    double beta = 1.0;

    HolderParams(double rho_, double beta_) : rho(rho_), beta(beta_) {
        if (!(rho > 0.0) || !(beta > 0.0) || beta > 1.0)
            throw std::invalid_argument("HolderParams: need rho > 0, beta in (0,1]");
    }
};

/// Split omega = omega_small + omega_big with weights chi(|omega|/Lambda)
/// and 1 - chi(|omega|/Lambda). The big part is computed by subtraction,
/// so additivity is exact in floating point.
inline std::pair<PhysicalVectorField, PhysicalVectorField> decompose(
    const PhysicalVectorField& omega, const CutoffParams& params) {
    const Grid& g = omega.grid();
    PhysicalVectorField small(g), big(g);
    const double inv_lambda = 1.0 / params.lambda_threshold;
    for (std::size_t i = 0; i < omega[0].size(); ++i) {
        const double w = chi(omega.magnitude(i) * inv_lambda);
        for (int c = 0; c < 3; ++c) {
            small[c][i] = w * omega[c][i];
            big[c][i] = omega[c][i] - small[c][i];
        }
    }
    return {std::move(small), std::move(big)};
}

// ---------------------------------------------------------------------------
// Angle-field sampling and the Holder fit
// ---------------------------------------------------------------------------

struct AnglePairSample {
    GridIndex x, y;
    double distance = 0.0;  // minimum-image |x - y|
    double sin_phi = 0.0;   // |w^(x) x w^(y)|, in [0,1]
    double mag_x = 0.0;
    double mag_y = 0.0;
};

namespace detail_angle {

inline double pair_sin(const PhysicalVectorField& omega, std::size_t a,
                       std::size_t b) {
    const double ma = omega.magnitude(a), mb = omega.magnitude(b);
    const double ax = omega[0][a] / ma, ay = omega[1][a] / ma, az = omega[2][a] / ma;
    const double bx = omega[0][b] / mb, by = omega[1][b] / mb, bz = omega[2][b] / mb;
    const double cx = ay * bz - az * by;
    const double cy = az * bx - ax * bz;
    const double cz = ax * by - ay * bx;
    return std::min(1.0, std::sqrt(cx * cx + cy * cy + cz * cz));
}

inline double pair_distance(const Grid& g, const GridIndex& a, const GridIndex& b) {
    const double h = g.spacing();
    const double dx = h * g.min_image(a.ix - b.ix);
    const double dy = h * g.min_image(a.iy - b.iy);
    const double dz = h * g.min_image(a.iz - b.iz);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace detail_angle

/// Monte Carlo sample of vorticity-direction angles over point pairs with
/// |omega| >= lambda at both ends. Deterministic in the seed. Returns an
/// empty list when fewer than two points clear the threshold.
inline std::vector<AnglePairSample> sample_angles(const PhysicalVectorField& omega,
                                                  std::size_t n_pairs, double lambda,
                                                  std::uint64_t seed) {
    const Grid& g = omega.grid();
    std::vector<std::size_t> super;
    for (std::size_t i = 0; i < omega[0].size(); ++i)
        if (omega.magnitude(i) >= lambda) super.push_back(i);

    std::vector<AnglePairSample> out;
    if (super.size() < 2) return out;

    auto to_index = [&](std::size_t flat) {
        GridIndex p;
        p.iz = static_cast<int>(flat % g.n);
        p.iy = static_cast<int>((flat / g.n) % g.n);
        p.ix = static_cast<int>(flat / (static_cast<std::size_t>(g.n) * g.n));
        return p;
    };

    CounterRng rng(seed, /*stream=*/11);
    out.reserve(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        const std::size_t a = super[rng.next_below(super.size())];
        std::size_t b = super[rng.next_below(super.size())];
        if (a == b) continue;
        AnglePairSample s;
        s.x = to_index(a);
        s.y = to_index(b);
        s.distance = detail_angle::pair_distance(g, s.x, s.y);
        s.sin_phi = detail_angle::pair_sin(omega, a, b);
        s.mag_x = omega.magnitude(a);
        s.mag_y = omega.magnitude(b);
        out.push_back(s);
    }
    return out;
}

/// All distinct super-threshold pairs; O(N^2), intended for n <= 16.
inline std::vector<AnglePairSample> sample_angles_exhaustive(
    const PhysicalVectorField& omega, double lambda) {
    const Grid& g = omega.grid();
    std::vector<std::size_t> super;
    for (std::size_t i = 0; i < omega[0].size(); ++i)
        if (omega.magnitude(i) >= lambda) super.push_back(i);

    auto to_index = [&](std::size_t flat) {
        GridIndex p;
        p.iz = static_cast<int>(flat % g.n);
        p.iy = static_cast<int>((flat / g.n) % g.n);
        p.ix = static_cast<int>(flat / (static_cast<std::size_t>(g.n) * g.n));
        return p;
    };

    std::vector<AnglePairSample> out;
    for (std::size_t ia = 0; ia + 1 < super.size(); ++ia) {
        for (std::size_t ib = ia + 1; ib < super.size(); ++ib) {
            AnglePairSample s;
            s.x = to_index(super[ia]);
            s.y = to_index(super[ib]);
            s.distance = detail_angle::pair_distance(g, s.x, s.y);
            s.sin_phi = detail_angle::pair_sin(omega, super[ia], super[ib]);
            s.mag_x = omega.magnitude(super[ia]);
            s.mag_y = omega.magnitude(super[ib]);
            out.push_back(s);
        }
    }
    return out;
}

/// Largest rho for which |sin phi| <= |x-y|^beta / rho holds on the sample:
/// rho^(beta) = min over pairs of distance^beta / sin_phi. Pairs with
/// sin_phi <= 1e-14 impose no constraint; if every pair is skipped the
/// hypothesis is vacuous and +infinity is returned.
inline double holder_fit(const std::vector<AnglePairSample>& samples, double beta) {
    if (samples.empty())
        throw std::invalid_argument("holder_fit: empty sample");
    double rho = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        if (s.sin_phi <= 1e-14) continue;
        rho = std::min(rho, std::pow(s.distance, beta) / s.sin_phi);
    }
    return rho;
}

// ---------------------------------------------------------------------------
// X / Y / Z budget
// ---------------------------------------------------------------------------

/// Pointwise budget fields and their integrals for one (Lambda, q).
/// K = |w|^{q-2} S:(w tensor w) splits as K = X + Y + Z with the strain
/// generated separately by the small/big vorticity parts.
struct XyzBudget {
    PhysicalField K, X, Y, Z;
    double K_int = 0.0, X_int = 0.0, Y_int = 0.0, Z_int = 0.0;
    std::size_t super_count = 0;  // points with |omega| > Lambda
};

namespace detail_budget {

/// Strain generated by one vorticity part: the Calderon-Zygmund map
/// omega -> S evaluated spectrally through the Biot-Savart velocity.
inline PhysicalStrainField strain_of_part(const PhysicalVectorField& part) {
    VectorField part_hat = transform_forward(part);
    for (int c = 0; c < 3; ++c) part_hat[c][0] = 0.0;  // CZ map ignores the mean
    return to_physical(strain_spectral(biot_savart(part_hat)));
}

inline double pow_guarded(double m, double p) {
    return m > 0.0 ? std::pow(m, p) : 0.0;
}

}  // namespace detail_budget

inline XyzBudget xyz_budget(const PhysicalVectorField& omega,
                            const CutoffParams& params, double q) {
    if (!(q > 1.0)) throw std::invalid_argument("xyz_budget: q must exceed 1");
    const Grid& g = omega.grid();

    auto [small, big] = decompose(omega, params);
    const PhysicalStrainField s_small = detail_budget::strain_of_part(small);
    const PhysicalStrainField s_big = detail_budget::strain_of_part(big);

    XyzBudget b{PhysicalField(g), PhysicalField(g), PhysicalField(g),
                PhysicalField(g)};
    for (std::size_t i = 0; i < omega[0].size(); ++i) {
        const double m = omega.magnitude(i);
        const double mpow = detail_budget::pow_guarded(m, q - 2.0);
        if (m > params.lambda_threshold) ++b.super_count;

        const std::array<double, 3> w{omega[0][i], omega[1][i], omega[2][i]};
        const std::array<double, 3> wb{big[0][i], big[1][i], big[2][i]};

        SymTensor sl = s_small.at(i);
        SymTensor sb = s_big.at(i);
        SymTensor st;
        for (int c = 0; c < 6; ++c) st[c] = sl[c] + sb[c];

        const double full = sym_contract(st, w, w);
        const double big_big = sym_contract(st, wb, wb);
        b.K[i] = mpow * full;
        b.X[i] = mpow * (full - big_big);
        b.Y[i] = mpow * sym_contract(sl, wb, wb);
        b.Z[i] = mpow * sym_contract(sb, wb, wb);
    }
    b.K_int = integral(b.K);
    b.X_int = integral(b.X);
    b.Y_int = integral(b.Y);
    b.Z_int = integral(b.Z);
    return b;
}

// ---------------------------------------------------------------------------
// Riesz potential and J
// ---------------------------------------------------------------------------

/// I(x) = int |omega(y)| / |x-y|^lambda dy over the periodic box with the
/// minimum-image kernel, evaluated as an FFT convolution. The singular
/// cell is replaced by the exact integral of |z|^{-lambda} over the ball
/// of equal volume, 4 pi r*^{3-lambda} / (3-lambda), r* = (3 h^3/4pi)^{1/3}.
inline PhysicalField riesz_potential(const PhysicalField& omega_mag,
                                     double lambda_exp) {
    if (!(lambda_exp >= 2.0 && lambda_exp < 3.0))
        throw std::invalid_argument("riesz_potential: lambda must lie in [2,3)");
    const Grid& g = omega_mag.grid();
    const double h = g.spacing();
    const double pi = 3.14159265358979323846;

    // Near the singularity the kernel curvature makes the plain midpoint
    // rule the dominant error source, so cells within two spacings are
    // integrated by an 8^3 subdivided midpoint rule instead.
    const int near = 2;
    const int sub = 8;
    auto refined_cell = [&](double zx, double zy, double zz) {
        double acc = 0.0;
        const double s = h / sub;
        for (int a = 0; a < sub; ++a)
            for (int b = 0; b < sub; ++b)
                for (int c = 0; c < sub; ++c) {
                    const double x = zx + (a + 0.5) * s - 0.5 * h;
                    const double y = zy + (b + 0.5) * s - 0.5 * h;
                    const double z = zz + (c + 0.5) * s - 0.5 * h;
                    acc += std::pow(x * x + y * y + z * z, -0.5 * lambda_exp);
                }
        return acc / (sub * sub * sub);
    };

    PhysicalField kernel(g);
    for (int ix = 0; ix < g.n; ++ix) {
        const int mx = g.min_image(ix);
        const double zx = h * mx;
        for (int iy = 0; iy < g.n; ++iy) {
            const int my = g.min_image(iy);
            const double zy = h * my;
            for (int iz = 0; iz < g.n; ++iz) {
                const int mz = g.min_image(iz);
                const double zz = h * mz;
                const double r = std::sqrt(zx * zx + zy * zy + zz * zz);
                const std::size_t i = g.physical_index(ix, iy, iz);
                if (r == 0.0) {
                    const double rstar =
                        std::cbrt(3.0 * g.cell_volume() / (4.0 * pi));
                    kernel[i] = 4.0 * pi * std::pow(rstar, 3.0 - lambda_exp) /
                                ((3.0 - lambda_exp) * g.cell_volume());
                } else if (std::abs(mx) <= near && std::abs(my) <= near &&
                           std::abs(mz) <= near) {
                    kernel[i] = refined_cell(zx, zy, zz);
                } else {
                    kernel[i] = std::pow(r, -lambda_exp);
                }
            }
        }
    }

    SpectralField k_hat = transform_forward(kernel);
    SpectralField f_hat = transform_forward(omega_mag);
    const double box = kTwoPi * kTwoPi * kTwoPi;
    for (std::size_t i = 0; i < k_hat.size(); ++i) k_hat[i] *= box * f_hat[i];
    return transform_inverse(k_hat);
}

/// J = rho^{-1} int |omega|^q I dx with I the Riesz potential above.
inline double j_quantity(const PhysicalVectorField& omega, double q, double rho,
                         double lambda_exp) {
    const Grid& g = omega.grid();
    PhysicalField mag = magnitude(omega);
    PhysicalField pot = riesz_potential(mag, lambda_exp);
    double s = 0.0;
    for (std::size_t i = 0; i < mag.size(); ++i)
        s += std::pow(mag[i], q) * pot[i];
    return s * g.cell_volume() / rho;
}

}  // namespace vortiq
