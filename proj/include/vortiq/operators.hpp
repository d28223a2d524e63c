// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "vortiq/fft.hpp"
#include "vortiq/grid.hpp"

namespace vortiq {

namespace detail {

/// Apply op(kx, ky, kz, flat index) over the stored half-spectrum.
template <typename Op>
void for_each_mode(const Grid& g, Op&& op) {
    std::size_t i = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        const int kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const int ky = g.wavenumber(iy);
            for (int izh = 0; izh < g.nz_half(); ++izh, ++i) {
                op(kx, ky, izh, i);
            }
        }
    }
}

/// True for modes whose derivative is sign-ambiguous on this grid.
inline bool is_nyquist(const Grid& g, int kx, int ky, int kz) {
    const int ny = g.n / 2;
    return kx == -ny || ky == -ny || kz == ny || kx == ny || ky == ny;
}

}  // namespace detail

/// (curl v)^(k) = i k x v^(k). Nyquist modes are dropped.
inline VectorField curl(const VectorField& v) {
    const Grid& g = v.grid();
    VectorField out(g);
    const std::complex<double> I(0.0, 1.0);
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        if (detail::is_nyquist(g, kx, ky, kz)) return;
        const auto vx = v[0][i], vy = v[1][i], vz = v[2][i];
        out[0][i] = I * (double(ky) * vz - double(kz) * vy);
        out[1][i] = I * (double(kz) * vx - double(kx) * vz);
        out[2][i] = I * (double(kx) * vy - double(ky) * vx);
    });
    return out;
}

/// (div v)^(k) = i k . v^(k).
inline SpectralField divergence(const VectorField& v) {
    const Grid& g = v.grid();
    SpectralField out(g);
    const std::complex<double> I(0.0, 1.0);
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        if (detail::is_nyquist(g, kx, ky, kz)) return;
        out[i] = I * (double(kx) * v[0][i] + double(ky) * v[1][i] +
                      double(kz) * v[2][i]);
    });
    return out;
}

/// (grad f)^(k) = i k f^(k).
inline VectorField gradient(const SpectralField& f) {
    const Grid& g = f.grid();
    VectorField out(g);
    const std::complex<double> I(0.0, 1.0);
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        if (detail::is_nyquist(g, kx, ky, kz)) return;
        out[0][i] = I * double(kx) * f[i];
        out[1][i] = I * double(ky) * f[i];
        out[2][i] = I * double(kz) * f[i];
    });
    return out;
}

/// Projection onto divergence-free fields: v^ <- (I - k k^T/|k|^2) v^ for
/// k != 0; the mean mode passes through unchanged. Idempotent.
inline VectorField leray_project(const VectorField& v) {
    const Grid& g = v.grid();
    VectorField out(g);
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (k2 == 0.0) {
            for (int c = 0; c < 3; ++c) out[c][i] = v[c][i];
            return;
        }
        const std::complex<double> kdotv =
            (double(kx) * v[0][i] + double(ky) * v[1][i] + double(kz) * v[2][i]) / k2;
        out[0][i] = v[0][i] - double(kx) * kdotv;
        out[1][i] = v[1][i] - double(ky) * kdotv;
        out[2][i] = v[2][i] - double(kz) * kdotv;
    });
    return out;
}

/// 2/3-rule truncation: zero every mode with any |k_i| > n/3.
inline void dealias(SpectralField& f) {
    const Grid& g = f.grid();
    const int kmax = g.dealias_limit();
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        if (std::abs(kx) > kmax || std::abs(ky) > kmax || std::abs(kz) > kmax)
            f[i] = 0.0;
    });
}

inline void dealias(VectorField& v) {
    for (int c = 0; c < 3; ++c) dealias(v[c]);
}

/// Multiply by the exact viscous decay factor e^{-nu |k|^2 dt}.
inline void apply_viscous_factor(VectorField& v, double nu, double dt) {
    const Grid& g = v.grid();
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double f = std::exp(-nu * k2 * dt);
        for (int c = 0; c < 3; ++c) v[c][i] *= f;
    });
}

/// Largest |k . v^(k)| over k != 0, as a divergence-freeness measure.
inline double max_mode_divergence(const VectorField& v) {
    const Grid& g = v.grid();
    double worst = 0.0;
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        const std::complex<double> kv =
            double(kx) * v[0][i] + double(ky) * v[1][i] + double(kz) * v[2][i];
        worst = std::max(worst, std::abs(kv));
    });
    return worst;
}

/// Largest coefficient magnitude over all components.
inline double max_coefficient(const VectorField& v) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < v[c].size(); ++i)
            m = std::max(m, std::abs(v[c][i]));
    return m;
}

/// Re-sample a field onto a different grid by spectral zero padding
/// (coarse -> fine) or truncation (fine -> coarse).
inline SpectralField spectral_resample(const SpectralField& f, Grid target) {
    const Grid& g = f.grid();
    SpectralField out(target);
    const int keep = std::min(g.n, target.n) / 2 - 1;
    for (int ix = 0; ix < target.n; ++ix) {
        const int kx = target.wavenumber(ix);
        if (std::abs(kx) > keep) continue;
        const int sx = kx >= 0 ? kx : kx + g.n;
        for (int iy = 0; iy < target.n; ++iy) {
            const int ky = target.wavenumber(iy);
            if (std::abs(ky) > keep) continue;
            const int sy = ky >= 0 ? ky : ky + g.n;
            for (int kz = 0; kz <= keep; ++kz) {
                out.at(ix, iy, kz) = f.at(sx, sy, kz);
            }
        }
    }
    return out;
}

inline VectorField spectral_resample(const VectorField& v, Grid target) {
    VectorField out(target);
    for (int c = 0; c < 3; ++c) out.comp[c] = spectral_resample(v[c], target);
    return out;
}

}  // namespace vortiq
