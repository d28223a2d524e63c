// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "vortiq/fft.hpp"
#include "vortiq/grid.hpp"
#include "vortiq/norms.hpp"
#include "vortiq/operators.hpp"
#include "vortiq/rng.hpp"

namespace vortiq {

/// Spectral velocity state advanced by the time stepper.
struct SolverState {
    VectorField u_hat;
    double time = 0.0;
    double nu = 0.0;
};

struct SolverConfig {
    double dt = 1e-2;        // fixed step, used when cfl <= 0
    double cfl = 0.0;        // adaptive step dt = cfl h / max|u| when > 0
    double t_end = 1.0;
    bool dealias = true;
    int record_stride = 1;
    double omega_ceiling = 1e6;  // stop and report when max|omega| exceeds this
};

/// Raised by the stepper when the state leaves the resolvable regime.
struct BlowUpError : std::runtime_error {
    double time;
    double max_omega;
    BlowUpError(double t, double m)
        : std::runtime_error("solver: blow-up detected at t = " + std::to_string(t)),
          time(t), max_omega(m) {}
};

/// Rotational-form nonlinear term P(u x omega)^, dealiased; equals
/// -P(u . grad u) for divergence-free u. The mean mode is zeroed, being
/// exactly zero for the continuous product of band-limited fields.
inline VectorField nonlinear_term(const SolverState& state, bool do_dealias = true) {
    const Grid& g = state.u_hat.grid();
    PhysicalVectorField u = transform_inverse(state.u_hat);
    PhysicalVectorField w = transform_inverse(curl(state.u_hat));

    PhysicalVectorField cross(g);
    for (std::size_t i = 0; i < cross[0].size(); ++i) {
        const double ux = u[0][i], uy = u[1][i], uz = u[2][i];
        const double wx = w[0][i], wy = w[1][i], wz = w[2][i];
        cross[0][i] = uy * wz - uz * wy;
        cross[1][i] = uz * wx - ux * wz;
        cross[2][i] = ux * wy - uy * wx;
    }

    VectorField rhs = transform_forward(cross);
    if (do_dealias) dealias(rhs);
    rhs = leray_project(rhs);
    for (int c = 0; c < 3; ++c) rhs[c][0] = 0.0;
    return rhs;
}

namespace detail {

inline void axpy(VectorField& y, double a, const VectorField& x) {
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < y[c].size(); ++i) y[c][i] += a * x[c][i];
}

inline VectorField scaled_viscous(const VectorField& v, double nu, double dt) {
    VectorField out = v;
    apply_viscous_factor(out, nu, dt);
    return out;
}

}  // namespace detail

/// One step of classical four-stage Runge-Kutta combined with the exact
/// integrating factor e^{-nu |k|^2 dt} for the viscous term, so the linear
/// part carries no time-discretization error.
inline SolverState step(const SolverState& state, double dt, bool do_dealias = true,
                        double omega_ceiling = 1e6) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    const double nu = state.nu;

    const VectorField k1 = nonlinear_term(state, do_dealias);

    SolverState s2{state.u_hat, state.time, nu};
    detail::axpy(s2.u_hat, 0.5 * dt, k1);
    apply_viscous_factor(s2.u_hat, nu, 0.5 * dt);
    const VectorField k2 = nonlinear_term(s2, do_dealias);

    SolverState s3{detail::scaled_viscous(state.u_hat, nu, 0.5 * dt), state.time, nu};
    detail::axpy(s3.u_hat, 0.5 * dt, k2);
    const VectorField k3 = nonlinear_term(s3, do_dealias);

    SolverState s4{detail::scaled_viscous(state.u_hat, nu, dt), state.time, nu};
    {
        VectorField k3h = detail::scaled_viscous(k3, nu, 0.5 * dt);
        detail::axpy(s4.u_hat, dt, k3h);
    }
    const VectorField k4 = nonlinear_term(s4, do_dealias);

    SolverState next{detail::scaled_viscous(state.u_hat, nu, dt),
                     state.time + dt, nu};
    {
        VectorField acc = detail::scaled_viscous(k1, nu, dt);
        detail::axpy(next.u_hat, dt / 6.0, acc);
    }
    {
        VectorField mid = k2;
        detail::axpy(mid, 1.0, k3);
        VectorField acc = detail::scaled_viscous(mid, nu, 0.5 * dt);
        detail::axpy(next.u_hat, dt / 3.0, acc);
    }
    detail::axpy(next.u_hat, dt / 6.0, k4);

    // Blow-up is reported, not prevented.
    const PhysicalVectorField w = transform_inverse(curl(next.u_hat));
    const double max_w = max_magnitude(w);
    if (!std::isfinite(max_w) || max_w > omega_ceiling)
        throw BlowUpError(next.time, max_w);
    return next;
}

inline double energy(const SolverState& s) {
    return 0.5 * l2_norm_sq_spectral(s.u_hat);
}

inline double enstrophy(const SolverState& s) {
    return 0.5 * l2_norm_sq_spectral(curl(s.u_hat));
}

/// CFL-based step size dt = cfl h / max|u|, capped by remaining time.
inline double cfl_step(const SolverState& s, double cfl) {
    const PhysicalVectorField u = transform_inverse(s.u_hat);
    const double umax = std::max(max_magnitude(u), 1e-12);
    return cfl * s.u_hat.grid().spacing() / umax;
}

// ---------------------------------------------------------------------------
// Initial conditions
// ---------------------------------------------------------------------------

/// u = (cos x sin y sin z, -sin x cos y sin z, 0); divergence-free.
inline SolverState init_taylor_green(Grid g, double nu) {
    PhysicalVectorField u(g);
    for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = g.coord(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const double z = g.coord(iz);
                const std::size_t i = g.physical_index(ix, iy, iz);
                u[0][i] = std::cos(x) * std::sin(y) * std::sin(z);
                u[1][i] = -std::sin(x) * std::cos(y) * std::sin(z);
                u[2][i] = 0.0;
            }
        }
    }
    return SolverState{transform_forward(u), 0.0, nu};
}

/// Planar Taylor-Green vortex embedded in 3D; an exact solution decaying
/// as e^{-2 nu t}.
inline SolverState init_taylor_green_2d(Grid g, double nu) {
    PhysicalVectorField u(g);
    for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = g.coord(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const std::size_t i = g.physical_index(ix, iy, iz);
                u[0][i] = std::cos(x) * std::sin(y);
                u[1][i] = -std::sin(x) * std::cos(y);
                u[2][i] = 0.0;
            }
        }
    }
    return SolverState{transform_forward(u), 0.0, nu};
}

/// ABC flow: a wavenumber-one Beltrami field (curl u = u), whose nonlinear
/// term is a pure gradient; u(t) = e^{-nu t} u(0) solves the equations.
inline SolverState init_abc(Grid g, double A, double B, double C, double nu) {
    PhysicalVectorField u(g);
    for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = g.coord(iy);
            for (int iz = 0; iz < g.n; ++iz) {
                const double z = g.coord(iz);
                const std::size_t i = g.physical_index(ix, iy, iz);
                u[0][i] = A * std::sin(z) + C * std::cos(y);
                u[1][i] = B * std::sin(x) + A * std::cos(z);
                u[2][i] = C * std::sin(y) + B * std::cos(x);
            }
        }
    }
    return SolverState{transform_forward(u), 0.0, nu};
}

namespace detail_init {

inline void shape_spectrum(VectorField& v, double slope, double k_peak) {
    const Grid& g = v.grid();
    detail::for_each_mode(g, [&](int kx, int ky, int kz, std::size_t i) {
        const double k = std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        double f = 0.0;
        if (k > 0.0) {
            // shell energy ~ k^slope e^{-(k/kp)^2}; per-mode amplitude
            // divides out the k^2 shell population.
            f = std::sqrt(std::pow(k, slope) * std::exp(-(k / k_peak) * (k / k_peak)) /
                          (k * k));
        }
        for (int c = 0; c < 3; ++c) v[c][i] *= f;
    });
}

}  // namespace detail_init

/// Random divergence-free field with shell spectrum ~ k^slope e^{-(k/k_peak)^2},
/// scaled so each velocity component has rms = amplitude. Deterministic in
/// the seed (counter-based generator, fixed traversal order).
inline SolverState init_random_divfree(Grid g, double spectrum_slope, double k_peak,
                                       double amplitude, std::uint64_t seed,
                                       double nu) {
    PhysicalVectorField noise(g);
    CounterRng rng(seed, /*stream=*/7);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < noise[c].size(); ++i)
            noise[c][i] = rng.next_gaussian();

    VectorField u_hat = transform_forward(noise);
    detail_init::shape_spectrum(u_hat, spectrum_slope, k_peak);
    u_hat = leray_project(u_hat);
    dealias(u_hat);
    for (int c = 0; c < 3; ++c) u_hat[c][0] = 0.0;

    const double e = l2_norm_sq_spectral(u_hat);
    const double target = 3.0 * amplitude * amplitude * std::pow(kTwoPi, 3);
    const double scale = e > 0.0 ? std::sqrt(target / e) : 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < u_hat[c].size(); ++i) u_hat[c][i] *= scale;
    return SolverState{u_hat, 0.0, nu};
}

}  // namespace vortiq
