#pragma once
// Small shared utilities: compensated summation, deterministic RNG helpers,
// content digests, float formatting, and a worker-capped parallel loop.

#include <charconv>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace pmns {

// Kahan compensated accumulator: error per add stays within a couple of ulp,
// so totals depend only on the add order, not on accumulated drift.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Interleaved lanes of Kahan accumulators.  Adding round-robin into L
// independent lanes breaks the serial dependency chain of a single
// accumulator, which lets long lattice sums pipeline/vectorize.  The final
// combine folds lanes (sums first, then compensations) in fixed lane order,
// itself compensated, so the result is deterministic.
template <int L>
struct KahanLanes {
    double s[L] = {};
    double c[L] = {};
    void add(int lane, double x) {
        double y = x - c[lane];
        double t = s[lane] + y;
        c[lane] = (t - s[lane]) - y;
        s[lane] = t;
    }
    void add_block(const double* x) {
        for (int i = 0; i < L; ++i) {
            double y = x[i] - c[i];
            double t = s[i] + y;
            c[i] = (t - s[i]) - y;
            s[i] = t;
        }
    }
    double value() const {
        KahanSum acc;
        for (int i = 0; i < L; ++i) acc.add(s[i]);
        for (int i = 0; i < L; ++i) acc.add(-c[i]);
        return acc.value();
    }
};

// Deterministic uniform doubles in [lo, hi): fixed 53-bit conversion from the
// raw 64-bit stream so values do not depend on the standard library's
// distribution implementation.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo = 0.0, double hi = 1.0) {
        std::uint64_t bits = gen() >> 11;                       // top 53 bits
        double u = static_cast<double>(bits) * 0x1.0p-53;       // [0,1)
        return lo + (hi - lo) * u;
    }
    std::uint64_t raw() { return gen(); }
};

// FNV-1a 64-bit digest; used for manifest content hashes.
inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

// Shortest decimal that round-trips the double exactly (std::to_chars).
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Runs fn(i) for i in [0, n).  With max_threads <= 1 this is a plain loop;
// otherwise the range is split into contiguous chunks, one worker each.
// Callers must write only to disjoint slots so the result is independent of
// the worker count.
void parallel_for(std::size_t n, int max_threads, const std::function<void(std::size_t)>& fn);

// Global worker cap, set once by the CLI --threads flag (default 1).
int worker_cap();
void set_worker_cap(int n);

}  // namespace pmns
