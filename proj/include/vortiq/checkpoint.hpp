// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "vortiq/grid.hpp"

namespace vortiq {

/// Binary field checkpoint.
///
/// Layout (all multi-byte values little-endian):
///   bytes 0..7   magic "VQFIELD1"
///   u64          format version (1)
///   u64          n (points per dimension)
///   f64          time
///   f64          nu
///   then, for each of the three components, the complex coefficients of
///   the Hermitian half-spectrum, row-major over (kx index, ky index,
///   kz = 0..n/2), stored as interleaved (real, imag) 64-bit floats.
inline constexpr std::uint64_t kCheckpointVersion = 1;
inline constexpr char kCheckpointMagic[8] = {'V', 'Q', 'F', 'I', 'E', 'L', 'D', '1'};

namespace detail {

inline void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<unsigned char, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), 8);
}

inline void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(os, bits);
}

inline std::uint64_t get_u64(std::istream& is) {
    std::array<unsigned char, 8> b;
    is.read(reinterpret_cast<char*>(b.data()), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

inline double get_f64(std::istream& is) {
    const std::uint64_t bits = get_u64(is);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace detail

struct Checkpoint {
    VectorField u_hat;
    double time = 0.0;
    double nu = 0.0;
};

inline void write_checkpoint(const std::string& path, const VectorField& u_hat,
                             double time, double nu) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path);
    os.write(kCheckpointMagic, 8);
    detail::put_u64(os, kCheckpointVersion);
    detail::put_u64(os, static_cast<std::uint64_t>(u_hat.grid().n));
    detail::put_f64(os, time);
    detail::put_f64(os, nu);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < u_hat[c].size(); ++i) {
            detail::put_f64(os, u_hat[c][i].real());
            detail::put_f64(os, u_hat[c][i].imag());
        }
    }
    if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

inline Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kCheckpointMagic, 8) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    const std::uint64_t version = detail::get_u64(is);
    if (version != kCheckpointVersion)
        throw std::runtime_error("checkpoint: unsupported version in " + path);
    const auto n = static_cast<int>(detail::get_u64(is));

    Checkpoint ck;
    ck.u_hat = VectorField(Grid(n));
    ck.time = detail::get_f64(is);
    ck.nu = detail::get_f64(is);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < ck.u_hat[c].size(); ++i) {
            const double re = detail::get_f64(is);
            const double im = detail::get_f64(is);
            ck.u_hat[c][i] = {re, im};
        }
    }
    if (!is) throw std::runtime_error("checkpoint: truncated file " + path);
    return ck;
}

}  // namespace vortiq
