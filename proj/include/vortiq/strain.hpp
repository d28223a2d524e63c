// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vortiq/fft.hpp"
#include "vortiq/grid.hpp"
#include "vortiq/operators.hpp"

namespace vortiq {

/// Symmetric 3x3 tensor stored as (xx, yy, zz, xy, xz, yz).
using SymTensor = std::array<double, 6>;

inline double sym_frobenius(const SymTensor& s) {
    return std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] +
                     2.0 * (s[3] * s[3] + s[4] * s[4] + s[5] * s[5]));
}

/// S : (a tensor b) for a symmetric tensor.
inline double sym_contract(const SymTensor& s, const std::array<double, 3>& a,
                           const std::array<double, 3>& b) {
    return s[0] * a[0] * b[0] + s[1] * a[1] * b[1] + s[2] * a[2] * b[2] +
           s[3] * (a[0] * b[1] + a[1] * b[0]) + s[4] * (a[0] * b[2] + a[2] * b[0]) +
           s[5] * (a[1] * b[2] + a[2] * b[1]);
}

/// Rate-of-strain tensor in spectral form; symmetric and trace-free by
/// construction for divergence-free input.
struct StrainField {
    std::array<SpectralField, 6> comp;  // xx, yy, zz, xy, xz, yz

    StrainField() = default;
    explicit StrainField(Grid g)
        : comp{SpectralField(g), SpectralField(g), SpectralField(g),
               SpectralField(g), SpectralField(g), SpectralField(g)} {}

    const Grid& grid() const { return comp[0].grid(); }
};

/// Physical-space samples of the six strain components.
struct PhysicalStrainField {
    std::array<PhysicalField, 6> comp;

    const Grid& grid() const { return comp[0].grid(); }

    SymTensor at(std::size_t i) const {
        return {comp[0][i], comp[1][i], comp[2][i], comp[3][i], comp[4][i], comp[5][i]};
    }
};

/// S^_ij(k) = i (k_i u^_j + k_j u^_i) / 2.
inline StrainField strain_spectral(const VectorField& u_hat) {
    const Grid& g = u_hat.grid();
    StrainField s(g);
    const std::complex<double> I(0.0, 1.0);
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        if (detail::is_nyquist(g, kx, ky, kz)) return;
        const auto ux = u_hat[0][i], uy = u_hat[1][i], uz = u_hat[2][i];
        s.comp[0][i] = I * double(kx) * ux;
        s.comp[1][i] = I * double(ky) * uy;
        s.comp[2][i] = I * double(kz) * uz;
        s.comp[3][i] = 0.5 * I * (double(kx) * uy + double(ky) * ux);
        s.comp[4][i] = 0.5 * I * (double(kx) * uz + double(kz) * ux);
        s.comp[5][i] = 0.5 * I * (double(ky) * uz + double(kz) * uy);
    });
    return s;
}

inline PhysicalStrainField to_physical(const StrainField& s) {
    PhysicalStrainField out;
    for (int c = 0; c < 6; ++c) out.comp[c] = transform_inverse(s.comp[c]);
    return out;
}

/// Velocity from vorticity: u^(k) = i k x w^(k) / |k|^2, u^(0) = 0.
/// Inverts the curl on mean-free fields; input must be mean-free.
inline VectorField biot_savart(const VectorField& omega_hat) {
    const Grid& g = omega_hat.grid();
    double mean_mag = 0.0;
    for (int c = 0; c < 3; ++c)
        mean_mag = std::max(mean_mag, std::abs(omega_hat[c][0]));
    const double total = max_coefficient(omega_hat);
    if (mean_mag > 1e-10 * std::max(total, 1e-300))
        throw std::invalid_argument("biot_savart: input has a nonzero mean mode");

    VectorField u(g);
    const std::complex<double> I(0.0, 1.0);
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k2 == 0.0 || detail::is_nyquist(g, kx, ky, kz)) return;
        const auto wx = omega_hat[0][i], wy = omega_hat[1][i], wz = omega_hat[2][i];
        u[0][i] = I * (double(ky) * wz - double(kz) * wy) / k2;
        u[1][i] = I * (double(kz) * wx - double(kx) * wz) / k2;
        u[2][i] = I * (double(kx) * wy - double(ky) * wx) / k2;
    });
    return u;
}

/// Geometric factor D(e1,e2,e3) = (e1.e3) det[e1 e2 e3] for unit vectors.
/// Satisfies |D| <= |sin angle(e2,e3)| and |D| <= 1.
inline double geometric_factor(const std::array<double, 3>& e1,
                               const std::array<double, 3>& e2,
                               const std::array<double, 3>& e3) {
    auto unit = [](const std::array<double, 3>& e) {
        return std::abs(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] - 1.0) <= 2e-8;
    };
    if (!unit(e1) || !unit(e2) || !unit(e3))
        throw std::invalid_argument("geometric_factor: inputs must be unit vectors");
    const double dot = e1[0] * e3[0] + e1[1] * e3[1] + e1[2] * e3[2];
    const double det = e1[0] * (e2[1] * e3[2] - e2[2] * e3[1]) -
                       e2[0] * (e1[1] * e3[2] - e1[2] * e3[1]) +
                       e3[0] * (e1[1] * e2[2] - e1[2] * e2[1]);
    return dot * det;
}

/// Strain tensor at selected grid points by direct quadrature of the
/// Calderon-Zygmund representation
///   S(x) = (3/8pi) pv int { r^ (x) (r^ x w(y)) + transpose } / |x-y|^3 dy,
/// r^ = (x-y)/|x-y| taken with the minimum image convention. The singular
/// cell is skipped with no local correction: the kernel has zero average
/// over spheres, so the omitted contribution is O(h |grad w|).
inline std::vector<SymTensor> strain_singular_integral(
    const PhysicalVectorField& omega, const std::vector<GridIndex>& samples) {
    const Grid& g = omega.grid();
    const double h = g.spacing();
    const double weight = g.cell_volume() * 3.0 / (8.0 * 3.14159265358979323846);

    std::vector<SymTensor> out;
    out.reserve(samples.size());
    for (const GridIndex& s : samples) {
        if (s.ix < 0 || s.ix >= g.n || s.iy < 0 || s.iy >= g.n || s.iz < 0 ||
            s.iz >= g.n)
            throw std::invalid_argument("strain_singular_integral: sample off grid");
        SymTensor acc{0, 0, 0, 0, 0, 0};
        for (int jx = 0; jx < g.n; ++jx) {
            const double rx = h * g.min_image(s.ix - jx);
            for (int jy = 0; jy < g.n; ++jy) {
                const double ry = h * g.min_image(s.iy - jy);
                for (int jz = 0; jz < g.n; ++jz) {
                    if (jx == s.ix && jy == s.iy && jz == s.iz) continue;
                    const double rz = h * g.min_image(s.iz - jz);
                    const double r2 = rx * rx + ry * ry + rz * rz;
                    const double r = std::sqrt(r2);
                    const double inv = 1.0 / (r2 * r2 * r);  // 1/|r|^5 folds r^ twice
                    const std::size_t j = g.physical_index(jx, jy, jz);
                    const double wx = omega[0][j], wy = omega[1][j], wz = omega[2][j];
                    // c = r x w (unnormalized)
                    const double cx = ry * wz - rz * wy;
                    const double cy = rz * wx - rx * wz;
                    const double cz = rx * wy - ry * wx;
                    acc[0] += 2.0 * rx * cx * inv;
                    acc[1] += 2.0 * ry * cy * inv;
                    acc[2] += 2.0 * rz * cz * inv;
                    acc[3] += (rx * cy + ry * cx) * inv;
                    acc[4] += (rx * cz + rz * cx) * inv;
                    acc[5] += (ry * cz + rz * cy) * inv;
                }
            }
        }
        for (double& v : acc) v *= weight;
        out.push_back(acc);
    }
    return out;
}

/// Normalized stretching density S : (w^ tensor w^) at sample points,
/// from pointwise contraction of a precomputed strain field. Points where
/// |omega| falls below threshold report 0 (direction undefined).
inline std::vector<double> stretching_density_spectral(
    const PhysicalStrainField& strain, const PhysicalVectorField& omega,
    const std::vector<GridIndex>& samples, double mag_threshold) {
    const Grid& g = omega.grid();
    std::vector<double> out;
    out.reserve(samples.size());
    for (const GridIndex& s : samples) {
        const std::size_t i = g.physical_index(s.ix, s.iy, s.iz);
        const double m = omega.magnitude(i);
        if (m <= mag_threshold) {
            out.push_back(0.0);
            continue;
        }
        const std::array<double, 3> dir{omega[0][i] / m, omega[1][i] / m,
                                        omega[2][i] / m};
        out.push_back(sym_contract(strain.at(i), dir, dir));
    }
    return out;
}

/// Same density by direct quadrature of
///   (3/4pi) int D(r^, w^(y), w^(x)) |w(y)| / |x-y|^3 dy,
/// the representation behind the alignment estimates. The vorticity and
/// its direction are taken at the integration point y; D dots the kernel
/// direction with w^(x). This orientation is the one that reproduces the
/// spectral route.
inline std::vector<double> stretching_density_quadrature(
    const PhysicalVectorField& omega, const std::vector<GridIndex>& samples,
    double mag_threshold, double kernel_sign = 1.0) {
    const Grid& g = omega.grid();
    const double h = g.spacing();
    const double weight =
        kernel_sign * g.cell_volume() * 3.0 / (4.0 * 3.14159265358979323846);

    std::vector<double> out;
    out.reserve(samples.size());
    for (const GridIndex& s : samples) {
        const std::size_t i = g.physical_index(s.ix, s.iy, s.iz);
        const double m = omega.magnitude(i);
        if (m <= mag_threshold) {
            out.push_back(0.0);
            continue;
        }
        const double ex = omega[0][i] / m, ey = omega[1][i] / m, ez = omega[2][i] / m;
        double acc = 0.0;
        for (int jx = 0; jx < g.n; ++jx) {
            const double rx = h * g.min_image(s.ix - jx);
            for (int jy = 0; jy < g.n; ++jy) {
                const double ry = h * g.min_image(s.iy - jy);
                for (int jz = 0; jz < g.n; ++jz) {
                    if (jx == s.ix && jy == s.iy && jz == s.iz) continue;
                    const double rz = h * g.min_image(s.iz - jz);
                    const double r2 = rx * rx + ry * ry + rz * rz;
                    const double r = std::sqrt(r2);
                    const std::size_t j = g.physical_index(jx, jy, jz);
                    const double wx = omega[0][j], wy = omega[1][j], wz = omega[2][j];
                    // (r^ . w^(x)) det[r^, w(y), w^(x)] / r^3, with both
                    // r^ normalizations folded into 1/r^5.
                    const double rdote = rx * ex + ry * ey + rz * ez;
                    const double det = rx * (wy * ez - wz * ey) -
                                       wx * (ry * ez - rz * ey) +
                                       ex * (ry * wz - rz * wy);
                    acc += rdote * det / (r2 * r2 * r);
                }
            }
        }
        out.push_back(acc * weight);
    }
    return out;
}

}  // namespace vortiq
