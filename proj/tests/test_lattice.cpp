#include <doctest.h>

#include <stdexcept>

#include <set>
#include <tuple>

#include "pmns/lattice.hpp"

using namespace pmns;

namespace {
std::tuple<int, int, int> key(const WaveVector& k) { return {k.k1, k.k2, k.k3}; }
}  // namespace

TEST_CASE("lattice enumeration counts and order") {
    CHECK(enumerate_lattice({1}).size() == 26);
    CHECK(enumerate_lattice({2}).size() == 124);
    CHECK(enumerate_lattice({4}).size() == 728);
    CHECK_THROWS_AS(enumerate_lattice({0}), std::invalid_argument);

    auto pts = enumerate_lattice({3});
    CHECK(pts.size() == 342);  // 7^3 - 1
    // lexicographic, no duplicates, no zero mode, all within bounds
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].sup_norm() >= 1);
        CHECK(pts[i].sup_norm() <= 3);
        CHECK(seen.insert(key(pts[i])).second);
        if (i > 0) CHECK(key(pts[i - 1]) < key(pts[i]));
    }
}

TEST_CASE("cubic shell point counts") {
    CHECK(shell_points(1).size() == 26);
    CHECK(shell_points(2).size() == 98);
    CHECK(shell_points(3).size() == 218);
    CHECK_THROWS_AS(shell_points(0), std::invalid_argument);
    for (int l = 1; l <= 16; ++l) {
        auto pts = shell_points(l);
        CHECK(pts.size() == std::size_t(24) * l * l + 2);
        for (const auto& p : pts) CHECK(p.sup_norm() == l);
    }
}

TEST_CASE("norm sandwich holds exactly in integer arithmetic") {
    // 3 * sup^2 >= |k|^2 >= sup^2 for every enumerated wavevector
    for (const auto& k : enumerate_lattice({5})) {
        std::int64_t sup = k.sup_norm();
        CHECK(3 * sup * sup >= k.norm2_int());
        CHECK(k.norm2_int() >= sup * sup);
    }
}

TEST_CASE("union of shells equals the lattice as a set") {
    const int N = 4;
    std::set<std::tuple<int, int, int>> from_shells;
    for (int l = 1; l <= N; ++l)
        for (const auto& p : shell_points(l)) from_shells.insert(key(p));
    std::set<std::tuple<int, int, int>> from_lattice;
    for (const auto& p : enumerate_lattice({N})) from_lattice.insert(key(p));
    CHECK(from_shells == from_lattice);
}
