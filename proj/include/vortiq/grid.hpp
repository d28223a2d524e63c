// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vortiq {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform collocation grid on the periodic box [0,2pi)^3.
///
/// n points per dimension, n >= 8 and even. Spectral storage uses the
/// Hermitian half-spectrum of a real-to-complex transform: wavenumbers
/// (kx, ky) run over the full signed range, kz over 0..n/2.
struct Grid {
    int n = 0;

    Grid() = default;
    explicit Grid(int points) : n(points) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 8");
    }

    static constexpr double length() { return kTwoPi; }
    double spacing() const { return kTwoPi / n; }
    double cell_volume() const { double h = spacing(); return h * h * h; }

    std::size_t physical_size() const {
        return static_cast<std::size_t>(n) * n * n;
    }
    int nz_half() const { return n / 2 + 1; }
    std::size_t spectral_size() const {
        return static_cast<std::size_t>(n) * n * nz_half();
    }

    /// Signed wavenumber for a transform index along a full dimension.
    int wavenumber(int index) const { return index <= n / 2 ? index : index - n; }

    /// Coordinate of collocation point i (same in all three directions).
    double coord(int i) const { return spacing() * i; }

    /// Signed minimum-image offset (in grid cells) for an index difference.
    int min_image(int d) const {
        d %= n;
        if (d < 0) d += n;
        return d <= n / 2 ? d : d - n;
    }

    std::size_t physical_index(int ix, int iy, int iz) const {
        return (static_cast<std::size_t>(ix) * n + iy) * n + iz;
    }
    std::size_t spectral_index(int ix, int iy, int izh) const {
        return (static_cast<std::size_t>(ix) * n + iy) * nz_half() + izh;
    }

    /// Largest |k_i| kept by the 2/3 dealiasing rule.
    int dealias_limit() const { return n / 3; }

    friend bool operator==(const Grid& a, const Grid& b) { return a.n == b.n; }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }
};

/// Scalar field as Fourier coefficients c(k) with f(x) = sum_k c(k) e^{i k.x}.
/// Only the kz >= 0 half is stored; Hermitian symmetry supplies the rest.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(Grid grid)
        : grid_(grid), coeff_(grid.spectral_size(), {0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }

    std::complex<double>& at(int ix, int iy, int izh) {
        return coeff_[grid_.spectral_index(ix, iy, izh)];
    }
    const std::complex<double>& at(int ix, int iy, int izh) const {
        return coeff_[grid_.spectral_index(ix, iy, izh)];
    }

    std::complex<double>* data() { return coeff_.data(); }
    const std::complex<double>* data() const { return coeff_.data(); }
    std::size_t size() const { return coeff_.size(); }

    std::complex<double>& operator[](std::size_t i) { return coeff_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return coeff_[i]; }

  private:
    Grid grid_;
    std::vector<std::complex<double>> coeff_;
};

/// Scalar field sampled on the collocation grid, row-major (x, y, z).
class PhysicalField {
  public:
    PhysicalField() = default;
    explicit PhysicalField(Grid grid)
        : grid_(grid), values_(grid.physical_size(), 0.0) {}

    const Grid& grid() const { return grid_; }

    double& at(int ix, int iy, int iz) {
        return values_[grid_.physical_index(ix, iy, iz)];
    }
    double at(int ix, int iy, int iz) const {
        return values_[grid_.physical_index(ix, iy, iz)];
    }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::size_t size() const { return values_.size(); }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

  private:
    Grid grid_;
    std::vector<double> values_;
};

/// Three-component vector field in spectral representation.
struct VectorField {
    std::array<SpectralField, 3> comp;

    VectorField() = default;
    explicit VectorField(Grid grid)
        : comp{SpectralField(grid), SpectralField(grid), SpectralField(grid)} {}

    const Grid& grid() const { return comp[0].grid(); }
    SpectralField& operator[](int c) { return comp[c]; }
    const SpectralField& operator[](int c) const { return comp[c]; }
};

/// Three-component vector field on the collocation grid.
struct PhysicalVectorField {
    std::array<PhysicalField, 3> comp;

    PhysicalVectorField() = default;
    explicit PhysicalVectorField(Grid grid)
        : comp{PhysicalField(grid), PhysicalField(grid), PhysicalField(grid)} {}

    const Grid& grid() const { return comp[0].grid(); }
    PhysicalField& operator[](int c) { return comp[c]; }
    const PhysicalField& operator[](int c) const { return comp[c]; }

    /// Euclidean magnitude at flat index i.
    double magnitude(std::size_t i) const {
        const double a = comp[0][i], b = comp[1][i], c = comp[2][i];
        return std::sqrt(a * a + b * b + c * c);
    }
};

/// Grid point identified by its integer indices.
struct GridIndex {
    int ix = 0, iy = 0, iz = 0;
};

/// Parseval weight of a stored mode: interior kz planes stand for a
/// conjugate pair, the kz = 0 and kz = n/2 planes for themselves.
inline double spectral_weight(const Grid& g, int izh) {
    return (izh == 0 || izh == g.n / 2) ? 1.0 : 2.0;
}

}  // namespace vortiq
