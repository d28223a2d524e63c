// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "vortiq/grid.hpp"

namespace vortiq {
namespace detail {

struct FftPlans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

// One plan pair per grid size, created lazily. Plans are built with
// FFTW_UNALIGNED so they can execute on any caller-owned buffer via the
// new-array interface. The FFTW planner is not thread-safe; execution is.
inline const FftPlans& plans_for(const Grid& g) {
    static std::mutex mutex;
    static std::map<int, FftPlans> cache;

    if (g.n < 8 || g.n % 2 != 0)
        throw std::invalid_argument("fft: field has no valid grid attached");

    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(g.n);
    if (it != cache.end()) return it->second;

    double* rbuf = fftw_alloc_real(g.physical_size());
    fftw_complex* cbuf = fftw_alloc_complex(g.spectral_size());
    if (!rbuf || !cbuf) throw std::bad_alloc();

    FftPlans p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c_3d(g.n, g.n, g.n, rbuf, cbuf, flags);
    p.c2r = fftw_plan_dft_c2r_3d(g.n, g.n, g.n, cbuf, rbuf, flags);
    fftw_free(cbuf);
    fftw_free(rbuf);
    if (!p.r2c || !p.c2r) throw std::runtime_error("fft: planner failed");
    return cache.emplace(g.n, p).first->second;
}

}  // namespace detail

/// Forward transform: collocation samples -> Fourier coefficients
/// (normalized so a constant field c maps to coefficient c at k = 0).
inline SpectralField transform_forward(const PhysicalField& f) {
    const Grid& g = f.grid();
    const auto& plans = detail::plans_for(g);

    std::vector<double> scratch(f.data(), f.data() + f.size());
    SpectralField out(g);
    fftw_execute_dft_r2c(plans.r2c, scratch.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));

    const double scale = 1.0 / static_cast<double>(g.physical_size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= scale;
    return out;
}

/// Inverse transform: Fourier coefficients -> collocation samples.
inline PhysicalField transform_inverse(const SpectralField& f) {
    const Grid& g = f.grid();
    const auto& plans = detail::plans_for(g);

    // Multi-dimensional c2r destroys its input; work on a copy.
    std::vector<std::complex<double>> scratch(f.data(), f.data() + f.size());
    PhysicalField out(g);
    fftw_execute_dft_c2r(plans.c2r,
                         reinterpret_cast<fftw_complex*>(scratch.data()),
                         out.data());
    return out;
}

inline VectorField transform_forward(const PhysicalVectorField& v) {
    VectorField out;
    for (int c = 0; c < 3; ++c) out.comp[c] = transform_forward(v[c]);
    return out;
}

inline PhysicalVectorField transform_inverse(const VectorField& v) {
    PhysicalVectorField out;
    for (int c = 0; c < 3; ++c) out.comp[c] = transform_inverse(v[c]);
    return out;
}

}  // namespace vortiq
