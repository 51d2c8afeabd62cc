#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "pmns/norms.hpp"
#include "pmns/operators.hpp"

using namespace pmns;

namespace {
Trajectory constant_trajectory(const SpectralField& f, const std::vector<double>& grid) {
    Trajectory t;
    t.grid = grid;
    t.fields.assign(grid.size(), f);
    return t;
}
}  // namespace

TEST_CASE("weighted sup norm on fields") {
    LatticeSpec spec{4};
    SpectralField f =
        make_single_mode(spec, {1, 0, 0}, {Complex(0), Complex(0.25), Complex(0)}, true, true);
    CHECK(pm_norm(f, 2.0) == doctest::Approx(0.25).epsilon(1e-15));

    // |k|^2 = 9 at k = (2,2,1); |amp| = 0.05 -> 0.45
    Coeff amp{Complex(0.03), Complex(0.0, -0.04), Complex(0)};
    CHECK(coeff_abs(amp) == doctest::Approx(0.05).epsilon(1e-15));
    SpectralField g = make_single_mode(spec, {2, 2, 1}, amp, false, false);
    CHECK(pm_norm(g, 2.0) == doctest::Approx(0.45).epsilon(1e-14));

    CHECK(pm_norm(SpectralField(spec), 2.0) == 0.0);
    CHECK_THROWS_AS(pm_norm(f, -1.0), std::invalid_argument);
}

TEST_CASE("space-time sup norm attains the t=0 node on decaying data") {
    LatticeSpec spec{2};
    SpectralField v0 =
        make_single_mode(spec, {1, 1, 0}, {Complex(0.5), Complex(-0.5), Complex(0)}, true, true);
    auto grid = make_time_grid(1e-3, 5.0, 32, GridSpacing::geometric);
    Trajectory heat = heat_propagate(v0, 1.0, grid);
    CHECK(st_pm_norm(heat, 2.0) == doctest::Approx(pm_norm(v0, 2.0)).epsilon(1e-15));
    for (std::size_t i = 1; i < heat.nodes(); ++i)
        CHECK(pm_norm(heat.fields[i], 2.0) <= pm_norm(heat.fields[i - 1], 2.0));

    Trajectory cst = constant_trajectory(v0, grid);
    CHECK(st_pm_norm(cst, 2.0) == pm_norm(v0, 2.0));
}

TEST_CASE("integral norm reproduces the semigroup identity on heat data") {
    // For v^(t,k) = A e^{-mu t |k|^2}: integral of |k|^4 |v^| over all time
    // equals |k|^2 A / mu.  The grid covers [0,10]; the envelope tail beyond
    // supplies the remainder, so value + tail matches the identity.
    auto grid = make_time_grid(1e-4, 10.0, 128, GridSpacing::geometric);
    for (double mu : {0.25, 1.0, 4.0})
        for (int kk : {1, 4, 9}) {
            WaveVector k = kk == 1 ? WaveVector{1, 0, 0}
                         : kk == 4 ? WaveVector{2, 0, 0}
                                   : WaveVector{2, 2, 1};
            REQUIRE(k.norm2_int() == kk);
            double A = 0.37;
            Coeff amp = kk == 4 ? Coeff{Complex(0), Complex(A), Complex(0)}
                                : Coeff{Complex(0), Complex(0), Complex(A)};
            if (kk == 9) amp = {Complex(A / std::sqrt(2.0)), Complex(-A / std::sqrt(2.0)), Complex(0)};
            SpectralField v0 = make_single_mode({4}, k, amp, false, false);
            Trajectory heat = heat_propagate(v0, mu, grid);
            ZNormResult z = z_norm(heat, 4.0, QuadRule::exact_kernel, mu);
            double expected = double(kk) * coeff_abs(v0.at(k)) / mu;
            CHECK(z.value + z.tail == doctest::Approx(expected).epsilon(1e-10));
        }
}

TEST_CASE("trapezoid converges to the exact-kernel value under refinement") {
    LatticeSpec spec{2};
    SpectralField v0 =
        make_single_mode(spec, {1, 0, 0}, {Complex(0), Complex(1.0), Complex(0)}, true, true);
    double mu = 1.0;
    double prev_gap = 1e300;
    for (int nodes : {64, 128, 256, 512}) {
        auto grid = make_time_grid(1e-4, 10.0, nodes, GridSpacing::geometric);
        Trajectory heat = heat_propagate(v0, mu, grid);
        double exact = z_norm(heat, 4.0, QuadRule::exact_kernel, mu).value;
        double trap = z_norm(heat, 4.0, QuadRule::trapezoid, mu).value;
        double gap = std::abs(trap / exact - 1.0);
        CHECK(gap < prev_gap);  // monotone approach
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-4);

    CHECK_THROWS_AS(parse_quad_rule("simpson"), std::invalid_argument);
    CHECK(parse_quad_rule("trapezoid") == QuadRule::trapezoid);
    CHECK(parse_quad_rule("exact-kernel") == QuadRule::exact_kernel);
}

TEST_CASE("zero trajectory has zero norms") {
    LatticeSpec spec{1};
    auto grid = make_time_grid(0.1, 1.0, 16, GridSpacing::uniform);
    Trajectory z = constant_trajectory(SpectralField(spec), grid);
    CHECK(st_pm_norm(z, 2.0) == 0.0);
    CHECK(z_norm(z, 4.0, QuadRule::exact_kernel, 1.0).value == 0.0);
    CHECK(triple_norm(z, 1.0) == 0.0);
    CHECK(ck_seminorm(z, 2.5) == 0.0);
}

TEST_CASE("constant trajectory integral is exact under the trapezoid fallback") {
    // With equal endpoint values the exact-kernel rule falls back to the
    // trapezoid, which is exact for constants: T * |k|^4 |v^|.
    LatticeSpec spec{2};
    SpectralField f =
        make_single_mode(spec, {1, 1, 0}, {Complex(0.2), Complex(-0.2), Complex(0)}, true, true);
    auto grid = make_time_grid(0.125, 2.0, 16, GridSpacing::uniform);
    Trajectory cst = constant_trajectory(f, grid);
    double expect = 2.0 * 4.0 * coeff_abs(f.at({1, 1, 0}));  // T * |k|^4 * |v^|
    CHECK(z_norm(cst, 4.0, QuadRule::exact_kernel, 1.0).value ==
          doctest::Approx(expect).epsilon(1e-13));
    CHECK(triple_norm(cst, 1.0) ==
          doctest::Approx(st_pm_norm(cst, 2.0) + expect).epsilon(1e-13));
}

TEST_CASE("weighted time-sup seminorm against closed-form maximizer") {
    // phi(t) = t^{1/4} e^{-mu t} A peaks at t* = 1/(4 mu) with value
    // (1/(4mu))^{1/4} e^{-1/4} A; the grid max is below and near it.
    LatticeSpec spec{1};
    double A = 0.8, mu = 1.0;
    SpectralField v0 = make_single_mode(spec, {1, 0, 0}, {Complex(0), Complex(A), Complex(0)},
                                        true, true);
    auto grid = make_time_grid(1e-4, 10.0, 128, GridSpacing::geometric);
    Trajectory heat = heat_propagate(v0, mu, grid);
    double analytic = std::pow(0.25 / mu, 0.25) * std::exp(-0.25) * A;
    double measured = ck_seminorm(heat, 2.5);
    CHECK(measured <= analytic * (1 + 1e-12));
    CHECK(measured >= analytic * 0.99);

    CHECK_THROWS_AS(ck_seminorm(heat, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(ck_seminorm(heat, 3.0), std::invalid_argument);
}

TEST_CASE("norm homogeneity, monotonicity and triangle inequality") {
    LatticeSpec spec{3};
    auto grid = make_time_grid(1e-3, 2.0, 24, GridSpacing::geometric);
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
        SpectralField f = make_random_divfree(spec, 1.0, 2.0, seed);
        SpectralField g = make_random_divfree(spec, 1.0, 2.0, seed + 100);

        // homogeneity is exact for power-of-two scalings
        CHECK(pm_norm(4.0 * f, 2.0) == 4.0 * pm_norm(f, 2.0));
        CHECK(pm_norm(0.5 * f, 2.0) == 0.5 * pm_norm(f, 2.0));
        CHECK(pm_norm(1.7 * f, 2.0) ==
              doctest::Approx(1.7 * pm_norm(f, 2.0)).epsilon(1e-14));

        // monotone in the exponent for integer frequencies (|k| >= 1)
        CHECK(pm_norm(f, 2.0) <= pm_norm(f, 2.5));
        CHECK(pm_norm(f, 2.5) <= pm_norm(f, 4.0));

        // triangle inequality on fields and trajectories
        CHECK(pm_norm(f + g, 2.0) <= pm_norm(f, 2.0) + pm_norm(g, 2.0) + 1e-18);
        Trajectory F = heat_propagate(f, 1.0, grid), G = heat_propagate(g, 1.0, grid);
        CHECK(triple_norm(F + G, 1.0) <= triple_norm(F, 1.0) + triple_norm(G, 1.0) + 1e-15);
        CHECK(triple_norm(4.0 * F, 1.0) == doctest::Approx(4.0 * triple_norm(F, 1.0)).epsilon(5e-15));
    }
}
