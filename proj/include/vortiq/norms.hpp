// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>

#include "vortiq/fft.hpp"
#include "vortiq/grid.hpp"
#include "vortiq/operators.hpp"

namespace vortiq {

/// Midpoint quadrature of f over the box.
inline double integral(const PhysicalField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i];
    return s * f.grid().cell_volume();
}

/// Pointwise Euclidean magnitude |v|.
inline PhysicalField magnitude(const PhysicalVectorField& v) {
    PhysicalField out(v.grid());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = v.magnitude(i);
    return out;
}

inline double max_abs(const PhysicalField& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

inline double max_magnitude(const PhysicalVectorField& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < v[0].size(); ++i) m = std::max(m, v.magnitude(i));
    return m;
}

/// L^q norm by midpoint quadrature, (sum |f|^q h^3)^{1/q}. Requires q >= 1.
inline double lq_norm(const PhysicalField& f, double q) {
    if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), q);
    return std::pow(s * f.grid().cell_volume(), 1.0 / q);
}

inline double lq_norm(const PhysicalVectorField& v, double q) {
    if (q < 1.0) throw std::invalid_argument("lq_norm: q must be >= 1");
    double s = 0.0;
    for (std::size_t i = 0; i < v[0].size(); ++i)
        s += std::pow(v.magnitude(i), q);
    return std::pow(s * v.grid().cell_volume(), 1.0 / q);
}

/// Squared L^2 norm from coefficients (Parseval); exact for band-limited
/// fields and the cross-check for the quadrature route.
inline double l2_norm_sq_spectral(const SpectralField& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    std::size_t i = 0;
    for (int ix = 0; ix < g.n; ++ix)
        for (int iy = 0; iy < g.n; ++iy)
            for (int izh = 0; izh < g.nz_half(); ++izh, ++i)
                s += spectral_weight(g, izh) * std::norm(f[i]);
    return s * kTwoPi * kTwoPi * kTwoPi;
}

inline double l2_norm_sq_spectral(const VectorField& v) {
    return l2_norm_sq_spectral(v[0]) + l2_norm_sq_spectral(v[1]) +
           l2_norm_sq_spectral(v[2]);
}

/// Integral of |grad(|omega|^{q/2})|^2, the dissipation-type term of the
/// L^q vorticity evolution inequality. The magnitude is regularized as
/// (|omega|^2 + eps^2)^{1/2}, eps = 1e-14 max|omega|, so the power is
/// differentiable where omega vanishes. Gradient taken spectrally.
inline double grad_pow_norm(const PhysicalVectorField& omega, double q) {
    if (q < 1.0) throw std::invalid_argument("grad_pow_norm: q must be >= 1");
    const Grid& g = omega.grid();
    const double eps = 1e-14 * max_magnitude(omega);
    const double eps2 = eps * eps;

    PhysicalField pow_field(g);
    for (std::size_t i = 0; i < pow_field.size(); ++i) {
        const double a = omega[0][i], b = omega[1][i], c = omega[2][i];
        pow_field[i] = std::pow(a * a + b * b + c * c + eps2, 0.25 * q);
    }

    VectorField grad_hat = gradient(transform_forward(pow_field));
    PhysicalVectorField grad = transform_inverse(grad_hat);
    double s = 0.0;
    for (std::size_t i = 0; i < grad[0].size(); ++i) {
        const double gx = grad[0][i], gy = grad[1][i], gz = grad[2][i];
        s += gx * gx + gy * gy + gz * gz;
    }
    return s * g.cell_volume();
}

}  // namespace vortiq
