#include "pmns/convsum.hpp"

#include <cmath>
#include <stdexcept>

#include "pmns/util.hpp"

namespace pmns {

namespace {

constexpr int kLanes = 16;

void check_preconditions(const WaveVector& k, int R, const char* who) {
    if (k.is_zero()) throw std::invalid_argument(std::string(who) + ": k must be nonzero");
    if (R < 4 * k.sup_norm())
        throw std::invalid_argument(std::string(who) +
                                    ": truncation radius must be >= 4*sup_norm(k) "
                                    "(required by the tail bound)");
}

// One row of the shell scan: fixed (j1, j2), j3 in [lo, hi].  Terms are
// buffered in blocks of kLanes so the divides vectorize; each buffer lands in
// its own compensated lane, giving a fixed, lane-deterministic add order.
inline void row_sum(double a, double b, double k3, int lo, int hi, KahanLanes<kLanes>& acc) {
    double buf[kLanes];
    int n = hi - lo + 1;
    int j3 = lo;
    while (n >= kLanes) {
        for (int i = 0; i < kLanes; ++i) {
            double z = double(j3 + i);
            double d1 = a + z * z;
            double zz = k3 - z;
            double d2 = b + zz * zz;
            buf[i] = 1.0 / (d1 * d2);
        }
        acc.add_block(buf);
        j3 += kLanes;
        n -= kLanes;
    }
    int lane = 0;
    for (; n > 0; --n, ++j3) {
        double z = double(j3);
        double d1 = a + z * z;
        double zz = k3 - z;
        double d2 = b + zz * zz;
        acc.add(lane++ & (kLanes - 1), 1.0 / (d1 * d2));
    }
}

// Same row with the excluded points j == 0 / j == k skipped; only rows whose
// (j1, j2) matches one of the excluded points ever take this path.
inline void row_sum_excl(double a, double b, int k3i, double k3, int lo, int hi,
                         KahanLanes<kLanes>& acc, bool skip_origin, bool skip_k) {
    int lane = 0;
    for (int j3 = lo; j3 <= hi; ++j3) {
        if (skip_origin && j3 == 0) continue;
        if (skip_k && j3 == k3i) continue;
        double z = double(j3);
        double d1 = a + z * z;
        double zz = k3 - z;
        double d2 = b + zz * zz;
        acc.add(lane++ & (kLanes - 1), 1.0 / (d1 * d2));
    }
}

// Visits shell l face by face (j1 = +-l planes, then j2 = +-l strips, then
// j3 = +-l interior rows) so every lattice point with sup norm exactly l is
// enumerated once.  `visit(a, b, k3-role...)` is invoked per row.
template <typename RowFn, typename RowExclFn>
void for_each_shell_row(int l, const WaveVector& k, RowFn&& row, RowExclFn&& row_excl) {
    const int k1 = k.k1, k2 = k.k2, k3 = k.k3;
    for (int s1 = -1; s1 <= 1; s1 += 2) {
        int j1 = s1 * l;
        for (int j2 = -l; j2 <= l; ++j2) {
            double a = double(j1) * j1 + double(j2) * j2;
            double b = double(k1 - j1) * (k1 - j1) + double(k2 - j2) * (k2 - j2);
            bool so = (j1 == 0 && j2 == 0);
            bool sk = (j1 == k1 && j2 == k2);
            if (so || sk)
                row_excl(a, b, k3, -l, l, so, sk);
            else
                row(a, b, double(k3), -l, l);
        }
    }
    for (int s2 = -1; s2 <= 1; s2 += 2) {
        int j2 = s2 * l;
        for (int j1 = -l + 1; j1 <= l - 1; ++j1) {
            double a = double(j1) * j1 + double(j2) * j2;
            double b = double(k1 - j1) * (k1 - j1) + double(k2 - j2) * (k2 - j2);
            bool so = (j1 == 0 && j2 == 0);
            bool sk = (j1 == k1 && j2 == k2);
            if (so || sk)
                row_excl(a, b, k3, -l, l, so, sk);
            else
                row(a, b, double(k3), -l, l);
        }
    }
    // j3 = +-l faces: rows now run along j2 with j1, j3 fixed and interior.
    for (int s3 = -1; s3 <= 1; s3 += 2) {
        int j3 = s3 * l;
        for (int j1 = -l + 1; j1 <= l - 1; ++j1) {
            double a = double(j1) * j1 + double(j3) * j3;
            double b = double(k1 - j1) * (k1 - j1) + double(k3 - j3) * (k3 - j3);
            bool so = false;                           // j3 = +-l != 0
            bool sk = (j3 == k3 && j1 == k1);
            if (so || sk)
                row_excl(a, b, k2, -l + 1, l - 1, so, sk);
            else
                row(a, b, double(k2), -l + 1, l - 1);
        }
    }
}

double shell_scan(const WaveVector& k, int R) {
    KahanLanes<kLanes> acc;
    for (int l = 1; l <= R; ++l)
        for_each_shell_row(
            l, k,
            [&](double a, double b, double kc, int lo, int hi) { row_sum(a, b, kc, lo, hi, acc); },
            [&](double a, double b, int kci, int lo, int hi, bool so, bool sk) {
                row_sum_excl(a, b, kci, double(kci), lo, hi, acc, so, sk);
            });
    return acc.value();
}

}  // namespace

double convolution_sum(const WaveVector& k, int R) {
    check_preconditions(k, R, "convolution_sum");
    return shell_scan(k, R);
}

RegionSums region_sums(const WaveVector& k, int R) {
    check_preconditions(k, R, "region_sums");
    RegionSums out;
    out.R = R;
    const int kinf = k.sup_norm();
    KahanSum q1, q2, q3, q4, total;
    auto visit = [&](int j1, int j2, int j3) {
        WaveVector j{j1, j2, j3};
        if (j.is_zero() || j == k) return;
        WaveVector d = k - j;
        double term = 1.0 / (double(j.norm2_int()) * double(d.norm2_int()));
        total.add(term);
        if (4 * j.sup_norm() < kinf)
            q2.add(term);
        else if (4 * d.sup_norm() < kinf)
            q3.add(term);
        else if (j.sup_norm() > 4 * kinf)
            q1.add(term);
        else
            q4.add(term);
    };
    // Shell faces enumerated directly (region membership is per point, so
    // this path stays a plain point loop, but never visits interior points).
    for (int l = 1; l <= R; ++l) {
        for (int s = -1; s <= 1; s += 2) {
            for (int j2 = -l; j2 <= l; ++j2)
                for (int j3 = -l; j3 <= l; ++j3) visit(s * l, j2, j3);
            for (int j1 = -l + 1; j1 <= l - 1; ++j1)
                for (int j3 = -l; j3 <= l; ++j3) visit(j1, s * l, j3);
            for (int j1 = -l + 1; j1 <= l - 1; ++j1)
                for (int j2 = -l + 1; j2 <= l - 1; ++j2) visit(j1, j2, s * l);
        }
    }
    out.q1 = q1.value();
    out.q2 = q2.value();
    out.q3 = q3.value();
    out.q4 = q4.value();
    out.total = total.value();
    return out;
}

double tail_bound(const WaveVector& k, int R) {
    check_preconditions(k, R, "tail_bound");
    double kabs = k.euclid_norm();
    // l - |k| >= l (1 - |k|/R) on every tail shell l > R; R >= 4 sup_norm(k)
    // >= (4/sqrt(3)) |k| keeps the factor positive.
    double shrink = 1.0 - kabs / double(R);
    if (!(shrink > 0.0)) throw std::logic_error("tail_bound: radius does not dominate |k|");
    double sum_l2 = 1.0 / double(R);                       // sum_{l>R} 1/l^2 <= 1/R
    double sum_l4 = 1.0 / (3.0 * std::pow(double(R), 3));  // sum_{l>R} 1/l^4 <= 1/(3R^3)
    return (24.0 * sum_l2 + 2.0 * sum_l4) / (shrink * shrink);
}

ConstantEstimate estimate_constant(int K, RPolicy policy) {
    if (K < 1) throw std::invalid_argument("estimate_constant: K must be >= 1");
    ConstantEstimate best;
    // The ball sum and the tail bound are invariant under coordinate
    // permutations and sign flips of k, so scan one sorted nonnegative
    // representative per orbit.
    for (int c = 1; c <= K; ++c)
        for (int b = 0; b <= c; ++b)
            for (int a = 0; a <= b; ++a) {
                WaveVector k{a, b, c};
                int R = policy(k);
                double value = k.euclid_norm() * (shell_scan(k, R) + tail_bound(k, R));
                ++best.k_scanned;
                if (value > best.c_est) {
                    best.c_est = value;
                    best.argmax = k;
                }
            }
    return best;
}

std::vector<LatticeSumRow> lattice_sum_rows(int K, RPolicy policy) {
    if (K < 1) throw std::invalid_argument("lattice_sum_rows: K must be >= 1");
    std::vector<LatticeSumRow> rows;
    for (int c = 1; c <= K; ++c)
        for (int b = 0; b <= c; ++b)
            for (int a = 0; a <= b; ++a) {
                WaveVector k{a, b, c};
                LatticeSumRow row;
                row.k = k;
                row.R = policy(k);
                row.s_r = shell_scan(k, row.R);
                row.tail = tail_bound(k, row.R);
                row.weighted_total = k.euclid_norm() * (row.s_r + row.tail);
                rows.push_back(row);
            }
    return rows;
}

}  // namespace pmns
