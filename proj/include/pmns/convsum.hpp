#pragma once
// Numerical certification of the lattice convolution-sum bound
//
//   |k| * sum_{j != 0, k} 1 / (|j|^2 |k - j|^2)  <=  c   (uniform in k),
//
// the inequality underlying the bilinear estimate: truncated sums in
// deterministic ascending-shell order with compensated accumulation, the
// four-region decomposition used to prove the bound, an integral-comparison
// tail bound, and the scan that records the empirical constant.

#include <cstdint>
#include <vector>

#include "pmns/lattice.hpp"

namespace pmns {

// S_R(k) = sum over 0 < sup_norm(j) <= R, j != k, of 1/(|j|^2 |k-j|^2),
// shells ascending.  Requires k != 0 and R >= 4 sup_norm(k) (the tail bound
// below needs that margin).
double convolution_sum(const WaveVector& k, int R);

struct RegionSums {
    double q1 = 0, q2 = 0, q3 = 0, q4 = 0;  // far / near-origin / near-k / middle
    double total = 0;                       // S_R(k), accumulated independently
    int R = 0;
};

// Partial sums over the proof's four regions of the punctured ball:
//   Q2: sup_norm(j)   < sup_norm(k)/4      (near the origin)
//   Q3: sup_norm(k-j) < sup_norm(k)/4      (near k)
//   Q1: sup_norm(j)   > 4 sup_norm(k)      (far field)
//   Q4: the rest with sup_norm(j) <= 4 sup_norm(k)
// Q2 and Q3 are images of each other under j -> k - j, so q2 == q3 up to
// roundoff (the summands are identical; only the add order differs).
RegionSums region_sums(const WaveVector& k, int R);

// Upper bound on the omitted tail S_inf(k) - S_R(k):
//   sum_{l > R} (24 l^2 + 2) / (l^2 (l - |k|)^2)
// bounded via |j| >= sup_norm(j) = l, |k-j| >= l - |k| >= l (1 - |k|/R), and
// the integral comparison sum_{l>R} l^-2 <= 1/R, sum_{l>R} l^-4 <= 1/(3R^3):
//   tail <= (24/R + 2/(3 R^3)) / (1 - |k|/R)^2.
// Requires R >= 4 sup_norm(k), which keeps l - |k| > 0 on every tail shell.
double tail_bound(const WaveVector& k, int R);

using RPolicy = int (*)(const WaveVector&);
inline int policy_16x(const WaveVector& k) { return 16 * k.sup_norm(); }

struct ConstantEstimate {
    double c_est = 0.0;
    WaveVector argmax;       // canonical representative 0 <= k1 <= k2 <= k3
    std::uint64_t k_scanned = 0;
};

// c_est = max over 0 < sup_norm(k) <= K of euclid_norm(k) * (S_R(k) +
// tail_bound(k, R)) with R = policy(k).  Both factors are invariant under
// coordinate permutations and sign flips of k (the ball and the summand are),
// so the scan evaluates one representative per symmetry orbit; argmax is
// reported as that representative.
ConstantEstimate estimate_constant(int K, RPolicy policy = policy_16x);

// One CSV row per canonical representative: S_R, tail, euclid*(S+tail).
struct LatticeSumRow {
    WaveVector k;
    int R = 0;
    double s_r = 0.0;
    double tail = 0.0;
    double weighted_total = 0.0;  // euclid_norm(k) * (s_r + tail)
};
std::vector<LatticeSumRow> lattice_sum_rows(int K, RPolicy policy = policy_16x);

}  // namespace pmns
