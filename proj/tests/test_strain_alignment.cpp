// SPDX-FileCopyrightText: 2026 vortiq contributors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vortiq/norms.hpp"
#include "vortiq/operators.hpp"
#include "vortiq/solver.hpp"
#include "vortiq/strain.hpp"
#include "vortiq/verify.hpp"

using namespace vortiq;

namespace {

double max_coeff_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a[c].size(); ++i)
            m = std::max(m, std::abs(a[c][i] - b[c][i]));
    return m;
}

}  // namespace

TEST_CASE("spectral strain: shear mode, trace, constants") {
    const Grid g(16);

    SECTION("u = (sin y, 0, 0) gives S_12 = cos(y)/2") {
        PhysicalVectorField u(g);
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz)
                    u[0].at(ix, iy, iz) = std::sin(g.coord(iy));
        const PhysicalStrainField s = to_physical(strain_spectral(transform_forward(u)));
        double err = 0.0, off = 0.0;
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy)
                for (int iz = 0; iz < g.n; ++iz) {
                    const std::size_t i = g.physical_index(ix, iy, iz);
                    err = std::max(err, std::abs(s.comp[3][i] -
                                                 0.5 * std::cos(g.coord(iy))));
                    for (int c : {0, 1, 2, 4, 5})
                        off = std::max(off, std::abs(s.comp[c][i]));
                }
        CHECK(err < 1e-12);
        CHECK(off < 1e-12);
    }

    SECTION("constant velocity has zero strain") {
        VectorField c(g);
        c[0][0] = 2.0;
        const StrainField s = strain_spectral(c);
        double m = 0.0;
        for (int k = 0; k < 6; ++k)
            for (std::size_t i = 0; i < s.comp[k].size(); ++i)
                m = std::max(m, std::abs(s.comp[k][i]));
        CHECK(m == 0.0);
    }

    SECTION("trace vanishes for divergence-free input") {
        SolverState st = init_random_divfree(g, 4.0, 3.0, 1.0, 17, 0.1);
        const PhysicalStrainField s = to_physical(strain_spectral(st.u_hat));
        double tr = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < s.comp[0].size(); ++i) {
            tr = std::max(tr, std::abs(s.comp[0][i] + s.comp[1][i] + s.comp[2][i]));
            scale = std::max(scale, sym_frobenius(s.at(i)));
        }
        CHECK(tr < 1e-10 * scale);
    }
}

TEST_CASE("Biot-Savart inverts the curl") {
    const Grid g(16);

    SECTION("ABC vorticity returns the ABC velocity") {
        SolverState abc = init_abc(g, 1.0, 1.0, 1.0, 0.1);
        const VectorField u = biot_savart(curl(abc.u_hat));
        CHECK(max_coeff_diff(u, abc.u_hat) < 1e-12);
    }

    SECTION("curl(biot_savart(w)) = w on mean-free divergence-free fields") {
        SolverState st = init_random_divfree(g, 4.0, 3.0, 1.0, 19, 0.1);
        dealias(st.u_hat);
        const VectorField w = curl(st.u_hat);
        const VectorField back = curl(biot_savart(w));
        CHECK(max_coeff_diff(back, w) < 1e-12 * max_coefficient(w));
    }

    SECTION("zero maps to zero; nonzero mean rejected") {
        VectorField z(g);
        CHECK(max_coefficient(biot_savart(z)) == 0.0);
        VectorField bad(g);
        bad[1][0] = 1.0;
        CHECK_THROWS_AS(biot_savart(bad), std::invalid_argument);
    }
}

TEST_CASE("geometric factor closed forms and bounds") {
    using A3 = std::array<double, 3>;
    const double s2 = std::sqrt(0.5);

    CHECK(geometric_factor(A3{1, 0, 0}, A3{0, 1, 0}, A3{0, 1, 0}) == 0.0);
    CHECK(geometric_factor(A3{1, 0, 0}, A3{0, 1, 0}, A3{0, 0, 1}) == 0.0);
    CHECK(geometric_factor(A3{1, 0, 0}, A3{0, 1, 0}, A3{s2, 0, s2}) ==
          Catch::Approx(0.5).margin(1e-14));
    CHECK_THROWS_AS(geometric_factor(A3{2, 0, 0}, A3{0, 1, 0}, A3{0, 0, 1}),
                    std::invalid_argument);

    CounterRng rng(4, 1);
    auto unit = [&]() {
        A3 v;
        double n2;
        do {
            for (int c = 0; c < 3; ++c) v[c] = rng.next_gaussian();
            n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        } while (n2 < 1e-12);
        for (int c = 0; c < 3; ++c) v[c] /= std::sqrt(n2);
        return v;
    };
    for (int i = 0; i < 10000; ++i) {
        const A3 e1 = unit(), e2 = unit(), e3 = unit();
        const double d = geometric_factor(e1, e2, e3);
        const double cx = e2[1] * e3[2] - e2[2] * e3[1];
        const double cy = e2[2] * e3[0] - e2[0] * e3[2];
        const double cz = e2[0] * e3[1] - e2[1] * e3[0];
        const double sin23 = std::sqrt(cx * cx + cy * cy + cz * cz);
        REQUIRE(std::abs(d) <= sin23 + 1e-12);
        REQUIRE(std::abs(d) <= 1.0 + 1e-12);
    }
}

TEST_CASE("singular-integral strain agrees with the spectral route") {
    SECTION("zero vorticity gives zero") {
        const Grid g(16);
        PhysicalVectorField w(g);
        const auto out = strain_singular_integral(w, {{1, 2, 3}});
        CHECK(sym_frobenius(out[0]) == 0.0);
    }

    SECTION("off-grid sample rejected") {
        const Grid g(16);
        PhysicalVectorField w(g);
        CHECK_THROWS_AS(strain_singular_integral(w, {{16, 0, 0}}),
                        std::invalid_argument);
    }

    SECTION("5% agreement at n=32 and refinement towards n=48") {
        const double e24 = detail_verify::strain_route_error(24, 16, 2024);
        const double e32 = detail_verify::strain_route_error(32, 16, 2024);
        const double e48 = detail_verify::strain_route_error(48, 16, 2024);
        CHECK(e32 <= 0.05);
        CHECK(e48 < e32);
        CHECK(e48 < e24);
    }

    SECTION("quadrature-route trace vanishes identically") {
        const Grid g(16);
        SolverState st = init_random_divfree(g, 4.0, 3.0, 1.0, 23, 0.1);
        const PhysicalVectorField w = transform_inverse(curl(st.u_hat));
        const auto out = strain_singular_integral(w, {{0, 0, 0}, {3, 7, 9}});
        for (const auto& s : out)
            CHECK(std::abs(s[0] + s[1] + s[2]) < 1e-12 * sym_frobenius(s));
    }
}

TEST_CASE("stretching density: dual routes and the aligned-field limit") {
    const Grid g(32);

    SECTION("routes agree within 5% on a smooth field") {
        const PhysicalVectorField w = detail_verify::bump_vorticity(g);
        VectorField w_hat = transform_forward(w);
        for (int c = 0; c < 3; ++c) w_hat[c][0] = 0.0;
        const PhysicalStrainField s = to_physical(strain_spectral(biot_savart(w_hat)));
        const auto pts = detail_verify::random_points(g, 16, 5150);
        const double thr = 1e-8 * max_magnitude(w);

        const auto a = stretching_density_spectral(s, w, pts, thr);
        const auto b = stretching_density_quadrature(w, pts, thr);
        double scale = 0.0, err = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            scale = std::max(scale, std::abs(a[i]));
            err = std::max(err, std::abs(a[i] - b[i]));
        }
        CHECK(err <= 0.05 * scale);
    }

    SECTION("planar aligned vorticity has vanishing stretching density") {
        // omega = -2 cos x cos y e_z: fixed direction, planar variation.
        SolverState tg = init_taylor_green_2d(g, 0.1);
        const VectorField w_hat = curl(tg.u_hat);
        const PhysicalVectorField w = transform_inverse(w_hat);
        const PhysicalStrainField s = to_physical(strain_spectral(biot_savart(w_hat)));
        const auto pts = detail_verify::random_points(g, 12, 808);
        const double thr = 1e-8 * max_magnitude(w);
        const double mag_scale = max_magnitude(w);

        for (double v : stretching_density_spectral(s, w, pts, thr))
            CHECK(std::abs(v) < 1e-10 * mag_scale);
        for (double v : stretching_density_quadrature(w, pts, thr))
            CHECK(std::abs(v) < 1e-10 * mag_scale);
    }

    SECTION("points below the direction threshold report zero") {
        PhysicalVectorField w(g);
        const auto out = stretching_density_quadrature(w, {{1, 1, 1}}, 1e-8);
        CHECK(out[0] == 0.0);
    }
}

TEST_CASE("Calderon-Zygmund ratio stays bounded under refinement") {
    const Grid base(16);
    SolverState coarse = init_random_divfree(base, 4.0, 3.0, 1.0, 29, 0.05);
    dealias(coarse.u_hat);
    const VectorField w_base = curl(coarse.u_hat);

    for (double r : {2.0, 3.0, 4.0}) {
        std::vector<double> ratios;
        for (int n : {16, 32, 64}) {
            const VectorField w = spectral_resample(w_base, Grid(n));
            const PhysicalVectorField wp = transform_inverse(w);
            const PhysicalStrainField s =
                to_physical(strain_spectral(biot_savart(w)));
            PhysicalField frob(Grid(n));
            for (std::size_t i = 0; i < frob.size(); ++i)
                frob[i] = sym_frobenius(s.at(i));
            ratios.push_back(lq_norm(frob, r) / lq_norm(wp, r));
        }
        const double lo = *std::min_element(ratios.begin(), ratios.end());
        const double hi = *std::max_element(ratios.begin(), ratios.end());
        CHECK(hi / lo < 1.2);
    }
}
