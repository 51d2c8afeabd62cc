#pragma once
// Spectral data model: truncated Fourier coefficients of mean-zero complex
// 3-vector fields on the periodic box [0,2pi]^3, time grids, trajectories,
// and generators for test data.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "pmns/lattice.hpp"

namespace pmns {

using Complex = std::complex<double>;
using Coeff = std::array<Complex, 3>;  // one Fourier coefficient v^(k)

inline Coeff operator+(const Coeff& a, const Coeff& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Coeff operator-(const Coeff& a, const Coeff& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Coeff operator*(double s, const Coeff& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double coeff_abs(const Coeff& a) {  // Euclidean magnitude of the complex 3-vector
    return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

// Dense storage over the full (2N+1)^3 cube; the zero-mode slot exists but is
// kept identically zero (mean-zero invariant).  Dense layout doubles as the
// sparse "stored coefficients" view: a mode is considered present iff nonzero.
struct SpectralField {
    LatticeSpec spec;
    bool real_valued = false;  // v^(-k) == conj(v^(k)) expected to hold
    bool div_free = false;     // k . v^(k) == 0 expected to hold
    std::vector<Coeff> data;   // size (2N+1)^3, index via slot()

    SpectralField() = default;
    explicit SpectralField(const LatticeSpec& s, bool real = false, bool divfree = false);

    int side() const { return 2 * spec.N + 1; }
    bool contains(const WaveVector& k) const { return k.sup_norm() <= spec.N; }
    std::size_t slot(const WaveVector& k) const {
        int n = spec.N, m = side();
        return (std::size_t(k.k1 + n) * m + std::size_t(k.k2 + n)) * m + std::size_t(k.k3 + n);
    }
    const Coeff& at(const WaveVector& k) const { return data[slot(k)]; }
    void set(const WaveVector& k, const Coeff& c);  // rejects k=0 and out-of-range k

    // Largest coefficient magnitude over the lattice (0 for the zero field).
    double max_coeff_abs() const;

    // Exact structural checks used by invariants and file loading.
    double max_divergence_rel() const;    // max |k.v^| / (|v^| |k|) over nonzero modes
    double max_conj_asym() const;         // max |v^(-k) - conj(v^(k))| over the lattice
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);

// Strictly increasing time grid starting at exactly 0, one field per node.
struct Trajectory {
    std::vector<double> grid;
    std::vector<SpectralField> fields;

    std::size_t nodes() const { return grid.size(); }
    void validate() const;  // throws on malformed grid or mismatched specs
};

Trajectory operator+(const Trajectory& a, const Trajectory& b);
Trajectory operator-(const Trajectory& a, const Trajectory& b);
Trajectory operator*(double s, const Trajectory& a);

enum class GridSpacing { geometric, uniform };

// {0} followed by `nodes` points spanning [t_min, t_max] with the requested
// spacing (geometric resolves the short-time region).
std::vector<double> make_time_grid(double t_min, double t_max, int nodes, GridSpacing spacing);

// Single-mode datum: v^(k0) = amplitude, optionally mirrored conjugate at -k0
// so the field is real-valued.  With divfree set, requires amplitude
// orthogonal to k0 (exact complex dot with the real integer vector).
SpectralField make_single_mode(const LatticeSpec& spec, const WaveVector& k0, const Coeff& amplitude,
                               bool realify, bool divfree);

// Spectral coefficients of eps * (sin x cos y cos z, -cos x sin y cos z, 0):
// eight modes k = (+-1,+-1,+-1), real-valued and divergence-free.
SpectralField make_taylor_green(const LatticeSpec& spec, double eps);

// Random real-valued divergence-free field with |v^(k)| <= eps / |k|^decay.
// Draws a complex 3-vector per half-lattice mode, projects out the k
// component, scales to the envelope, and mirrors the conjugate.
// Deterministic for a fixed seed.
SpectralField make_random_divfree(const LatticeSpec& spec, double eps, double decay_exponent,
                                  std::uint64_t seed);

}  // namespace pmns
