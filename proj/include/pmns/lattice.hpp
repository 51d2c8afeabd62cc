#pragma once
// Integer frequency lattice bookkeeping: wavevectors with sup/Euclidean
// norms, truncated-lattice enumeration, and cubic shells.

#include <cmath>
#include <cstdint>
#include <vector>

namespace pmns {

struct WaveVector {
    int k1 = 0, k2 = 0, k3 = 0;

    friend bool operator==(const WaveVector&, const WaveVector&) = default;

    std::int64_t norm2_int() const {  // exact squared Euclidean norm
        return std::int64_t(k1) * k1 + std::int64_t(k2) * k2 + std::int64_t(k3) * k3;
    }
    double euclid_norm() const { return std::sqrt(double(norm2_int())); }
    int sup_norm() const {
        int a = std::abs(k1), b = std::abs(k2), c = std::abs(k3);
        return a > b ? (a > c ? a : c) : (b > c ? b : c);
    }
    bool is_zero() const { return k1 == 0 && k2 == 0 && k3 == 0; }
    WaveVector operator-() const { return {-k1, -k2, -k3}; }
    friend WaveVector operator+(const WaveVector& a, const WaveVector& b) {
        return {a.k1 + b.k1, a.k2 + b.k2, a.k3 + b.k3};
    }
    friend WaveVector operator-(const WaveVector& a, const WaveVector& b) {
        return {a.k1 - b.k1, a.k2 - b.k2, a.k3 - b.k3};
    }
};

// Sup-norm truncation radius.  The active lattice is the punctured cube
// {k : 0 < sup_norm(k) <= N}: the zero mode is excluded because all fields
// are mean-zero.
struct LatticeSpec {
    int N = 0;
    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

// All wavevectors with 0 < sup_norm <= N in lexicographic (k1,k2,k3) order.
// Throws std::invalid_argument for N < 1.
std::vector<WaveVector> enumerate_lattice(const LatticeSpec& spec);

// All wavevectors with sup_norm exactly l (count (2l+1)^3 - (2l-1)^3
// = 24 l^2 + 2), lexicographic order.  Throws for l < 1.
std::vector<WaveVector> shell_points(int l);

}  // namespace pmns
