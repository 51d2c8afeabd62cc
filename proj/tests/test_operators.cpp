#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>

#include "pmns/norms.hpp"
#include "pmns/operators.hpp"
#include "pmns/util.hpp"

using namespace pmns;

namespace {
Trajectory constant_trajectory(const SpectralField& f, const std::vector<double>& grid) {
    Trajectory t;
    t.grid = grid;
    t.fields.assign(grid.size(), f);
    return t;
}

double max_field_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, coeff_abs(a.data[i] - b.data[i]));
    return m;
}
}  // namespace

TEST_CASE("schedule parsing and validation") {
    CHECK(parse_weight_kind("none") == WeightKind::none);
    CHECK(parse_weight_kind("sqrt_t") == WeightKind::sqrt_t);
    CHECK(parse_weight_kind("alpha_t") == WeightKind::alpha_t);
    CHECK_THROWS_AS(parse_weight_kind("exp_t"), std::invalid_argument);
    CHECK(weight_kind_name(WeightKind::sqrt_t) == "sqrt_t");

    CHECK(parse_conv_path("fast") == ConvPath::fast);
    CHECK(parse_conv_path("direct") == ConvPath::direct);
    CHECK_THROWS_AS(parse_conv_path("fft"), std::invalid_argument);

    KernelSchedule s;
    s.mu = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.mu = 1.0;
    s.weight_kind = WeightKind::alpha_t;
    s.alpha = 1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.alpha = 0.5;
    CHECK_NOTHROW(s.validate());
    CHECK(s.b(4.0) == 2.0);
    s.weight_kind = WeightKind::sqrt_t;
    CHECK(s.b(4.0) == 2.0);
    s.weight_kind = WeightKind::none;
    CHECK(s.b(4.0) == 0.0);
}

TEST_CASE("transverse projector: idempotent, kills gradients, fixes transverse data") {
    LatticeSpec spec{3};
    // gradient-like datum: v^(k) parallel to k is annihilated
    SpectralField grad(spec);
    grad.set({2, -1, 1}, {Complex(2.0, 1.0), Complex(-1.0, -0.5), Complex(1.0, 0.5)});
    SpectralField pg = leray_project(grad);
    CHECK(pg.max_coeff_abs() <= 1e-15);
    CHECK(pg.div_free);

    // transverse datum passes through unchanged
    SpectralField tr = make_single_mode(spec, {1, 0, 0}, {Complex(0), Complex(0.7), Complex(0, 0.2)},
                                        true, true);
    CHECK(max_field_diff(leray_project(tr), tr) <= 1e-16);

    // idempotence and exact zero divergence on random data
    SpectralField f(spec);
    Rng rng(42);
    for (const WaveVector& k : enumerate_lattice(spec))
        if (k.k1 + 2 * k.k2 + 4 * k.k3 > 0) {  // sparse arbitrary subset
            Coeff c{Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                    Complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
                    Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))};
            f.set(k, c);
        }
    SpectralField p1 = leray_project(f), p2 = leray_project(p1);
    CHECK(max_field_diff(p1, p2) <= 1e-15);
    CHECK(p1.max_divergence_rel() <= 1e-14);
}

TEST_CASE("heat propagation matches the exponential mode-by-mode") {
    LatticeSpec spec{2};
    SpectralField v0 =
        make_single_mode(spec, {1, 1, 0}, {Complex(0.4), Complex(-0.4), Complex(0)}, true, true);
    auto grid = make_time_grid(0.1, 2.0, 8, GridSpacing::uniform);
    Trajectory h = heat_propagate(v0, 1.5, grid);
    REQUIRE(h.grid == grid);
    CHECK(max_field_diff(h.fields[0], v0) == 0.0);  // t = 0 node is the datum itself
    for (std::size_t i = 0; i < h.nodes(); ++i) {
        double factor = std::exp(-1.5 * h.grid[i] * 2.0);
        CHECK(coeff_abs(h.fields[i].at({1, 1, 0})) ==
              doctest::Approx(factor * 0.4 * std::sqrt(2.0)).epsilon(1e-14));
    }
    CHECK(h.fields.back().real_valued);
    CHECK(h.fields.back().div_free);
}

TEST_CASE("weighted heat propagation carries the analyticity factor") {
    LatticeSpec spec{3};
    SpectralField v0 = make_random_divfree(spec, 1.0, 2.0, 5);
    auto grid = make_time_grid(1e-3, 10.0, 24, GridSpacing::geometric);
    for (WeightKind wk : {WeightKind::sqrt_t, WeightKind::alpha_t}) {
        KernelSchedule sched{2.0, wk, 0.5};
        Trajectory w = heat_propagate_weighted(v0, sched, grid);
        Trajectory h = heat_propagate(v0, sched.mu, grid);
        for (std::size_t i = 0; i < w.nodes(); ++i) {
            SpectralField rew =
                gevrey_weight(h.fields[i], sched.mu, sched.b(grid[i]), WeightDirection::apply);
            CHECK(max_field_diff(w.fields[i], rew) <= 1e-14 * v0.max_coeff_abs());
        }
    }
    // the combined exponent stays bounded: no inf/nan anywhere even at N large
    KernelSchedule sq{4.0, WeightKind::sqrt_t, 0.5};
    Trajectory big = heat_propagate_weighted(v0, sq, make_time_grid(1e-4, 1e4, 8, GridSpacing::geometric));
    for (const auto& f : big.fields)
        CHECK(std::isfinite(f.max_coeff_abs()));
}

TEST_CASE("exponential weight round trip and range guard") {
    LatticeSpec spec{4};
    SpectralField f = make_random_divfree(spec, 1.0, 2.0, 11);
    SpectralField round = gevrey_weight(gevrey_weight(f, 1.0, 3.0, WeightDirection::apply), 1.0, 3.0,
                                        WeightDirection::invert);
    CHECK(max_field_diff(round, f) <= 1e-15 * f.max_coeff_abs() * std::exp(0.0));

    // guard triggers on the largest reachable exponent, not the axis one
    CHECK_THROWS_AS(gevrey_weight(f, 1.0, 200.0, WeightDirection::apply), std::range_error);
    CHECK_NOTHROW(gevrey_weight(f, 1.0, 200.0, WeightDirection::invert));
}

TEST_CASE("convolution of two single modes lands on the frequency sum") {
    LatticeSpec spec{4};
    Coeff a{Complex(0, 0.5), Complex(0.25), Complex(0.1, -0.1)};
    Coeff b{Complex(0.3), Complex(0, -0.2), Complex(0.05)};
    SpectralField F = make_single_mode(spec, {1, 0, 0}, a, false, false);
    SpectralField G = make_single_mode(spec, {0, 1, 0}, b, false, false);
    for (ConvPath path : {ConvPath::direct, ConvPath::fast}) {
        // the direct sum touches only contributing pairs, so its zeros are
        // exact; the padded-FFT path may leave transform roundoff elsewhere
        double dust = path == ConvPath::direct ? 0.0 : 1e-15;
        TensorField T = truncated_convolution(F, G, path);
        const auto& t = T.at({1, 1, 0});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(t[3 * i + j] - a[i] * b[j]) <= 1e-15);
        // everything else is zero (up to the path's dust level)
        double off = 0.0;
        for (const WaveVector& k : enumerate_lattice(spec))
            if (!(k == WaveVector{1, 1, 0}))
                for (const Complex& c : T.at(k)) off = std::max(off, std::abs(c));
        CHECK(off <= dust);
    }

    // a pair whose sum leaves the lattice produces nothing at all
    SpectralField Fh = make_single_mode(spec, {4, 0, 0}, a, false, false);
    SpectralField Gh = make_single_mode(spec, {1, 0, 0}, b, false, false);
    for (ConvPath path : {ConvPath::direct, ConvPath::fast}) {
        double dust = path == ConvPath::direct ? 0.0 : 1e-15;
        TensorField T = truncated_convolution(Fh, Gh, path);
        double mx = 0.0;
        for (const auto& e : T.data)
            for (const Complex& c : e) mx = std::max(mx, std::abs(c));
        CHECK(mx <= dust);
    }
}

TEST_CASE("fast and direct convolutions agree to roundoff on random fields") {
    LatticeSpec spec{4};
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        SpectralField F = make_random_divfree(spec, 1.0, 2.0, seed);
        SpectralField G = make_random_divfree(spec, 1.0, 2.0, seed + 50);
        TensorField Tf = truncated_convolution(F, G, ConvPath::fast);
        TensorField Td = truncated_convolution(F, G, ConvPath::direct);
        double mx = 0.0;
        for (std::size_t s = 0; s < Tf.data.size(); ++s)
            for (int e = 0; e < 9; ++e) mx = std::max(mx, std::abs(Tf.data[s][e] - Td.data[s][e]));
        CHECK(mx <= 1e-12);

        // self-pair exercises the shared-transform branch of the fast path
        TensorField Sf = truncated_convolution(F, F, ConvPath::fast);
        TensorField Sd = truncated_convolution(F, F, ConvPath::direct);
        mx = 0.0;
        for (std::size_t s = 0; s < Sf.data.size(); ++s)
            for (int e = 0; e < 9; ++e) mx = std::max(mx, std::abs(Sf.data[s][e] - Sd.data[s][e]));
        CHECK(mx <= 1e-12);
    }
}

TEST_CASE("Duhamel term of constant single-mode inputs matches the closed form") {
    LatticeSpec spec{4};
    Coeff a{Complex(0, 0.5), Complex(0.25), Complex(0.1, -0.1)};
    Coeff b{Complex(0.3), Complex(0, -0.2), Complex(0.05)};
    SpectralField F0 = make_single_mode(spec, {1, 0, 0}, a, false, false);
    SpectralField G0 = make_single_mode(spec, {0, 1, 0}, b, false, false);
    auto grid = make_time_grid(0.25, 4.0, 12, GridSpacing::uniform);
    double mu = 0.8;

    WaveVector k{1, 1, 0};
    double kk = 2.0;
    // T = outer(a, b); W_i = i (sum_j k_j T_ij - k_i sum_ab k_a k_b T_ab / kk)
    Complex kb = 1.0 * b[0] + 1.0 * b[1];  // k . b
    Complex ka = 1.0 * a[0] + 1.0 * a[1];  // k . a
    std::array<Complex, 3> W;
    for (int i = 0; i < 3; ++i) {
        Complex div_i = a[i] * kb;
        double ki = i == 0 ? 1.0 : (i == 1 ? 1.0 : 0.0);
        W[i] = Complex(0, 1) * (div_i - ki * ka * kb / kk);
    }

    for (ConvPath path : {ConvPath::direct, ConvPath::fast}) {
        Trajectory B = bilinear_form(constant_trajectory(F0, grid), constant_trajectory(G0, grid),
                                     mu, path);
        REQUIRE(B.grid == grid);
        CHECK(B.fields[0].max_coeff_abs() == 0.0);  // empty integral at t = 0
        for (std::size_t n = 1; n < B.nodes(); ++n) {
            double factor = (1.0 - std::exp(-mu * grid[n] * kk)) / (mu * kk);
            const Coeff& got = B.fields[n].at(k);
            for (int i = 0; i < 3; ++i)
                CHECK(std::abs(got[i] - (-factor * W[i])) <= 1e-13);
        }
    }
}

TEST_CASE("Duhamel term is bilinear and structure-preserving") {
    LatticeSpec spec{3};
    double mu = 1.0;
    auto grid = make_time_grid(1e-2, 2.0, 16, GridSpacing::geometric);
    Trajectory F = heat_propagate(make_random_divfree(spec, 1.0, 2.0, 21), mu, grid);
    Trajectory G = heat_propagate(make_random_divfree(spec, 1.0, 2.0, 22), mu, grid);
    Trajectory H = heat_propagate(make_random_divfree(spec, 1.0, 2.0, 23), mu, grid);

    Trajectory lhs = bilinear_form(2.0 * F + G, H, mu);
    Trajectory rhs = 2.0 * bilinear_form(F, H, mu) + bilinear_form(G, H, mu);
    double scale = triple_norm(rhs, mu) + 1.0;
    CHECK(triple_norm(lhs - rhs, mu) <= 1e-12 * scale);

    // outputs of real inputs are real-valued and exactly transverse
    Trajectory B = bilinear_form(F, G, mu);
    for (const SpectralField& f : B.fields) {
        CHECK(f.max_conj_asym() <= 1e-15);
        CHECK(f.max_divergence_rel() <= 1e-13);
    }

    // mismatched grids are rejected
    auto grid2 = make_time_grid(1e-2, 2.0, 8, GridSpacing::geometric);
    Trajectory H2 = heat_propagate(make_random_divfree(spec, 1.0, 2.0, 23), mu, grid2);
    CHECK_THROWS_AS(bilinear_form(F, H2, mu), std::invalid_argument);
}

TEST_CASE("weighted Duhamel term degenerates to the plain one as the weight vanishes") {
    LatticeSpec spec{3};
    double mu = 1.0;
    auto grid = make_time_grid(1e-2, 2.0, 16, GridSpacing::geometric);
    Trajectory F = heat_propagate(make_random_divfree(spec, 1.0, 2.0, 31), mu, grid);
    Trajectory G = heat_propagate(make_random_divfree(spec, 1.0, 2.0, 32), mu, grid);

    KernelSchedule tiny{mu, WeightKind::alpha_t, 1e-6};
    Trajectory Bw = weighted_bilinear_form(F, G, tiny);
    Trajectory Bp = bilinear_form(F, G, mu);
    double st = st_pm_norm(Bp, 2.0);
    CHECK(st_pm_norm(Bw - Bp, 2.0) <= 1e-3 * st);

    // the sqrt-profile weighted term stays finite and transverse
    KernelSchedule sq{mu, WeightKind::sqrt_t, 0.5};
    Trajectory Bs = weighted_bilinear_form(F, G, sq);
    for (const SpectralField& f : Bs.fields) {
        CHECK(std::isfinite(f.max_coeff_abs()));
        CHECK(f.max_divergence_rel() <= 1e-12);
    }
}

TEST_CASE("measured bilinear bound is positive, finite, deterministic") {
    LatticeSpec spec{3};
    auto grid = make_time_grid(1e-3, 10.0, 32, GridSpacing::geometric);
    double c1 = measure_bilinear_constant(spec, 1.0, grid, 3, 77);
    double c2 = measure_bilinear_constant(spec, 1.0, grid, 3, 77);
    CHECK(c1 == c2);
    CHECK(c1 > 0.0);
    CHECK(std::isfinite(c1));
}
