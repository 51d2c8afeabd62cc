#pragma once
// Fourier-side operators: the divergence-free projector, heat semigroup,
// exponential analyticity weight, exact truncated convolution (direct and
// FFT-padded paths), and the Duhamel bilinear forms (plain and weighted).

#include <cstdint>
#include <string>
#include <vector>

#include "pmns/field.hpp"

namespace pmns {

enum class WeightKind { none, sqrt_t, alpha_t };
WeightKind parse_weight_kind(const std::string& name);
std::string weight_kind_name(WeightKind w);

// Viscosity plus the time-dependent analyticity-weight profile b(t):
// b == 0 (none), b(t) = sqrt(t), or b(t) = alpha * t with alpha in (0,1).
struct KernelSchedule {
    double mu = 1.0;
    WeightKind weight_kind = WeightKind::none;
    double alpha = 0.5;

    double b(double t) const;
    void validate() const;  // mu > 0; alpha in (0,1) when weight_kind == alpha_t
};

enum class ConvPath { direct, fast };
ConvPath parse_conv_path(const std::string& name);

// Per-mode projection v^ -> v^ - k (k . v^) / |k|^2, the Fourier multiplier
// of the divergence-free (transverse) projector.  Output is flagged div_free.
SpectralField leray_project(const SpectralField& f);

// Trajectory with node i holding e^{-mu t_i |k|^2} v0^(k).
Trajectory heat_propagate(const SpectralField& v0, double mu, const std::vector<double>& grid);

// Weighted propagation: node i holds e^{mu b(t_i) |k| - mu t_i |k|^2} v0^(k).
// The combined exponent is bounded above (mu/2 for the sqrt profile, 0 for
// the linear one on |k| >= 1), so this never overflows.
Trajectory heat_propagate_weighted(const SpectralField& v0, const KernelSchedule& sched,
                                   const std::vector<double>& grid);

// Multiplies each coefficient by e^{+-mu b_value |k|}.  Guarded: requires
// mu * b_value * sqrt(3) * N <= 700 (largest exponent actually reachable on
// the lattice) to stay within double range.
enum class WeightDirection { apply, invert };
SpectralField gevrey_weight(const SpectralField& f, double mu, double b_value, WeightDirection dir);

// All nine component products T_ij(k) = sum_l F_i^(l) G_j^(k-l) over pairs
// with both l and k-l inside the truncated lattice (l != 0, l != k holds
// automatically since mean-zero fields have no zero mode).
struct TensorField {
    LatticeSpec spec;
    std::vector<std::array<Complex, 9>> data;  // row-major T[3*i+j], dense cube layout

    std::size_t slot(const WaveVector& k) const {
        int n = spec.N, m = 2 * n + 1;
        return (std::size_t(k.k1 + n) * m + std::size_t(k.k2 + n)) * m + std::size_t(k.k3 + n);
    }
    const std::array<Complex, 9>& at(const WaveVector& k) const { return data[slot(k)]; }
};

// `fast` evaluates the product on a zero-padded cubic grid of side
// >= 4N+1 (rounded up to an FFT-friendly size), so the truncated linear
// convolution is exact with no circular wrap; `direct` is the nested-loop
// oracle.  Both paths must agree to roundoff; never collapse one into the
// other.
TensorField truncated_convolution(const SpectralField& F, const SpectralField& G, ConvPath path);

// True when the field is nonzero only on corner modes (|k_i| == N for all
// three components).  Any sum of two such modes has every component in
// {-2N, 0, 2N}, so it re-enters the truncated lattice only at the excluded
// zero mode: the truncated quadratic interaction of corner-supported data is
// identically zero, and the bilinear forms below return an exact zero
// trajectory rather than transform roundoff.  False for the zero field.
bool quadratic_interaction_vanishes(const SpectralField& f);

// The Duhamel integral term: node i, mode k holds
//   - integral_0^{t_i} e^{-mu (t_i - s) |k|^2} W(s,k) ds,
// where W(s,k) = i [ sum_j k_j T_ij(s,k) - k_i sum_ab k_a k_b T_ab(s,k) / |k|^2 ]
// is the projected divergence of the tensor product (the factor i comes from
// differentiating e^{i k.x}); W is interpolated linearly in s between nodes
// and each interval is integrated in closed form (kern_w0/kern_w1), with the
// running integral advanced by the exact per-interval decay factor.
Trajectory bilinear_form(const Trajectory& F, const Trajectory& G, double mu,
                         ConvPath path = ConvPath::fast);

// Weighted variant: inputs are de-weighted per node (multiply by
// e^{-mu b(s)|k|}), convolved and projected as above, and the node-i result
// carries the outer factor e^{+mu b(t_i)|k|}.  The s-integration uses the
// same closed-form kernel; the b(s) factor rides inside the linearly
// interpolated integrand.
Trajectory weighted_bilinear_form(const Trajectory& F, const Trajectory& G,
                                  const KernelSchedule& sched, ConvPath path = ConvPath::fast);

// Measured operator bound: max over `pairs` random heat-trajectory pairs of
// |||B(F,G)||| / (|||F||| |||G|||).  Used as the default smallness constant.
double measure_bilinear_constant(const LatticeSpec& spec, double mu,
                                 const std::vector<double>& grid, int pairs, std::uint64_t seed,
                                 ConvPath path = ConvPath::fast);

}  // namespace pmns
