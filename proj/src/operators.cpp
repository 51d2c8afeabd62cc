#include "pmns/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "pmns/kernels.hpp"
#include "pmns/norms.hpp"
#include "pmns/util.hpp"

namespace pmns {

WeightKind parse_weight_kind(const std::string& name) {
    if (name == "none") return WeightKind::none;
    if (name == "sqrt_t") return WeightKind::sqrt_t;
    if (name == "alpha_t") return WeightKind::alpha_t;
    throw std::invalid_argument("unknown weight kind: " + name +
                                " (expected none, sqrt_t or alpha_t)");
}

std::string weight_kind_name(WeightKind w) {
    switch (w) {
        case WeightKind::none: return "none";
        case WeightKind::sqrt_t: return "sqrt_t";
        case WeightKind::alpha_t: return "alpha_t";
    }
    return "?";
}

double KernelSchedule::b(double t) const {
    switch (weight_kind) {
        case WeightKind::none: return 0.0;
        case WeightKind::sqrt_t: return std::sqrt(t);
        case WeightKind::alpha_t: return alpha * t;
    }
    return 0.0;
}

void KernelSchedule::validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("kernel schedule: viscosity must be positive");
    if (weight_kind == WeightKind::alpha_t && !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("kernel schedule: alpha must lie in (0,1)");
}

ConvPath parse_conv_path(const std::string& name) {
    if (name == "direct") return ConvPath::direct;
    if (name == "fast") return ConvPath::fast;
    throw std::invalid_argument("unknown convolution path: " + name + " (expected direct or fast)");
}

SpectralField leray_project(const SpectralField& f) {
    SpectralField out(f.spec, f.real_valued, /*divfree=*/true);
    int N = f.spec.N;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                const Coeff& v = f.at(k);
                double kk = double(k.norm2_int());
                Complex dot = double(k.k1) * v[0] + double(k.k2) * v[1] + double(k.k3) * v[2];
                Coeff w{v[0] - dot * double(k.k1) / kk, v[1] - dot * double(k.k2) / kk,
                        v[2] - dot * double(k.k3) / kk};
                out.data[out.slot(k)] = w;
            }
    return out;
}

Trajectory heat_propagate(const SpectralField& v0, double mu, const std::vector<double>& grid) {
    if (!(mu > 0.0)) throw std::invalid_argument("heat_propagate: viscosity must be positive");
    Trajectory out;
    out.grid = grid;
    out.fields.reserve(grid.size());
    int N = v0.spec.N;
    for (double t : grid) {
        SpectralField f(v0.spec, v0.real_valued, v0.div_free);
        for (int a = -N; a <= N; ++a)
            for (int b = -N; b <= N; ++b)
                for (int c = -N; c <= N; ++c) {
                    WaveVector k{a, b, c};
                    if (k.is_zero()) continue;
                    double damp = std::exp(-mu * t * double(k.norm2_int()));
                    f.data[f.slot(k)] = damp * v0.at(k);
                }
        out.fields.push_back(std::move(f));
    }
    out.validate();
    return out;
}

Trajectory heat_propagate_weighted(const SpectralField& v0, const KernelSchedule& sched,
                                   const std::vector<double>& grid) {
    sched.validate();
    Trajectory out;
    out.grid = grid;
    out.fields.reserve(grid.size());
    int N = v0.spec.N;
    for (double t : grid) {
        double b = sched.b(t);
        SpectralField f(v0.spec, v0.real_valued, v0.div_free);
        for (int a = -N; a <= N; ++a)
            for (int bb = -N; bb <= N; ++bb)
                for (int c = -N; c <= N; ++c) {
                    WaveVector k{a, bb, c};
                    if (k.is_zero()) continue;
                    double kk = double(k.norm2_int());
                    // Exponent mu*b(t)|k| - mu*t|k|^2 is bounded above (mu/2
                    // for b=sqrt(t), 0 for b=alpha*t on |k|>=1): no overflow.
                    double expo = sched.mu * (b * std::sqrt(kk) - t * kk);
                    f.data[f.slot(k)] = std::exp(expo) * v0.at(k);
                }
        out.fields.push_back(std::move(f));
    }
    out.validate();
    return out;
}

SpectralField gevrey_weight(const SpectralField& f, double mu, double b_value, WeightDirection dir) {
    if (b_value < 0.0) throw std::invalid_argument("gevrey_weight: b must be >= 0");
    if (!(mu > 0.0)) throw std::invalid_argument("gevrey_weight: viscosity must be positive");
    // Largest reachable exponent is at the cube corner, |k| = sqrt(3) N.
    double worst = mu * b_value * std::sqrt(3.0) * double(f.spec.N);
    if (dir == WeightDirection::apply && worst > 700.0)
        throw std::range_error("gevrey_weight: exponent mu*b*sqrt(3)*N = " + format_double(worst) +
                               " exceeds double range (limit 700)");
    SpectralField out(f.spec, f.real_valued, f.div_free);
    int N = f.spec.N;
    double sign = dir == WeightDirection::apply ? 1.0 : -1.0;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                double w = std::exp(sign * mu * b_value * k.euclid_norm());
                out.data[out.slot(k)] = w * f.at(k);
            }
    return out;
}

namespace {

// ---- fast path: zero-padded cubic-grid transforms ------------------------

int next_fast_size(int n) {
    for (int m = n;; ++m) {
        int r = m;
        for (int p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

// One cached plan pair (+ workspace) per padded size.  Plans are created with
// FFTW_ESTIMATE so planning is deterministic and does not overwrite data.
// Everything here is used from one thread at a time (convolutions are issued
// sequentially by the orchestrator).
struct FftWorkspace {
    int M = 0;
    fftw_complex* buf_a = nullptr;
    fftw_complex* buf_b = nullptr;
    fftw_plan backward = nullptr;  // exponent +i k.x  (coefficients -> samples)
    fftw_plan forward = nullptr;   // exponent -i k.x  (samples -> scaled coefficients)

    explicit FftWorkspace(int m) : M(m) {
        std::size_t n = std::size_t(M) * M * M;
        buf_a = fftw_alloc_complex(n);
        buf_b = fftw_alloc_complex(n);
        backward = fftw_plan_dft_3d(M, M, M, buf_a, buf_b, FFTW_BACKWARD, FFTW_ESTIMATE);
        forward = fftw_plan_dft_3d(M, M, M, buf_a, buf_b, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~FftWorkspace() {
        fftw_destroy_plan(backward);
        fftw_destroy_plan(forward);
        fftw_free(buf_a);
        fftw_free(buf_b);
    }
    FftWorkspace(const FftWorkspace&) = delete;
    FftWorkspace& operator=(const FftWorkspace&) = delete;
};

FftWorkspace& workspace_for(int M) {
    static std::map<int, FftWorkspace> cache;
    auto it = cache.find(M);
    if (it == cache.end()) it = cache.emplace(std::piecewise_construct, std::forward_as_tuple(M),
                                              std::forward_as_tuple(M)).first;
    return it->second;
}

inline std::size_t padded_slot(int M, int a, int b, int c) {
    auto wrap = [M](int x) { return std::size_t(x < 0 ? x + M : x); };
    return (wrap(a) * M + wrap(b)) * M + wrap(c);
}

// Samples of one component on the padded grid via an unnormalized backward
// transform of its coefficients.
void component_samples(const SpectralField& f, int comp, int M, std::vector<Complex>& out) {
    FftWorkspace& ws = workspace_for(M);
    std::size_t n = std::size_t(M) * M * M;
    for (std::size_t i = 0; i < n; ++i) {
        ws.buf_a[i][0] = 0.0;
        ws.buf_a[i][1] = 0.0;
    }
    int N = f.spec.N;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                const Complex& v = f.at(k)[comp];
                std::size_t s = padded_slot(M, a, b, c);
                ws.buf_a[s][0] = v.real();
                ws.buf_a[s][1] = v.imag();
            }
    fftw_execute(ws.backward);
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = Complex(ws.buf_b[i][0], ws.buf_b[i][1]);
}

TensorField convolution_fast(const SpectralField& F, const SpectralField& G) {
    int N = F.spec.N;
    int M = next_fast_size(4 * N + 1);  // linear convolution support fits: no wrap
    FftWorkspace& ws = workspace_for(M);
    std::size_t n = std::size_t(M) * M * M;

    std::array<std::vector<Complex>, 3> fs, gs;
    for (int i = 0; i < 3; ++i) component_samples(F, i, M, fs[i]);
    if (&F == &G) {
        gs = fs;
    } else {
        for (int j = 0; j < 3; ++j) component_samples(G, j, M, gs[j]);
    }

    TensorField T;
    T.spec = F.spec;
    T.data.assign(std::size_t(2 * N + 1) * (2 * N + 1) * (2 * N + 1), {});
    double scale = 1.0 / double(n);  // forward o backward = n * identity
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            for (std::size_t s = 0; s < n; ++s) {
                Complex p = fs[i][s] * gs[j][s];
                ws.buf_a[s][0] = p.real();
                ws.buf_a[s][1] = p.imag();
            }
            fftw_execute(ws.forward);
            for (int a = -N; a <= N; ++a)
                for (int b = -N; b <= N; ++b)
                    for (int c = -N; c <= N; ++c) {
                        WaveVector k{a, b, c};
                        std::size_t s = padded_slot(M, a, b, c);
                        T.data[T.slot(k)][3 * i + j] =
                            scale * Complex(ws.buf_b[s][0], ws.buf_b[s][1]);
                    }
        }
    return T;
}

TensorField convolution_direct(const SpectralField& F, const SpectralField& G) {
    int N = F.spec.N;
    TensorField T;
    T.spec = F.spec;
    T.data.assign(std::size_t(2 * N + 1) * (2 * N + 1) * (2 * N + 1), {});
    // Accumulate F^(l) x G^(k-l) into every admissible k; l runs
    // lexicographically so the add order per output mode is deterministic.
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector l{a, b, c};
                if (l.is_zero()) continue;
                const Coeff& fv = F.at(l);
                if (fv[0] == 0.0 && fv[1] == 0.0 && fv[2] == 0.0) continue;
                for (int a2 = -N; a2 <= N; ++a2)
                    for (int b2 = -N; b2 <= N; ++b2)
                        for (int c2 = -N; c2 <= N; ++c2) {
                            WaveVector m{a2, b2, c2};
                            if (m.is_zero()) continue;
                            const Coeff& gv = G.at(m);
                            if (gv[0] == 0.0 && gv[1] == 0.0 && gv[2] == 0.0) continue;
                            WaveVector k = l + m;
                            if (k.sup_norm() > N) continue;
                            auto& t = T.data[T.slot(k)];
                            for (int i = 0; i < 3; ++i)
                                for (int j = 0; j < 3; ++j) t[3 * i + j] += fv[i] * gv[j];
                        }
            }
    return T;
}

// Projected divergence of the tensor field: W_i(k) = i [ sum_j k_j T_ij
// - k_i (sum_ab k_a k_b T_ab) / |k|^2 ].  The i factor comes from d/dx of
// e^{i k.x}; the subtraction removes the longitudinal part.
SpectralField projected_divergence(const TensorField& T, bool real_flag) {
    SpectralField W(T.spec, real_flag, /*divfree=*/true);
    int N = T.spec.N;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                const auto& t = T.at(k);
                double kd[3] = {double(k.k1), double(k.k2), double(k.k3)};
                Coeff div{};
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) div[i] += kd[j] * t[3 * i + j];
                Complex S = kd[0] * div[0] + kd[1] * div[1] + kd[2] * div[2];
                double kk = double(k.norm2_int());
                const Complex I(0.0, 1.0);
                Coeff w{I * (div[0] - kd[0] * S / kk), I * (div[1] - kd[1] * S / kk),
                        I * (div[2] - kd[2] * S / kk)};
                W.data[W.slot(k)] = w;
            }
    return W;
}

void require_compatible(const Trajectory& F, const Trajectory& G) {
    F.validate();
    G.validate();
    if (F.grid != G.grid) throw std::invalid_argument("bilinear form: time grids differ");
    if (!(F.fields[0].spec == G.fields[0].spec))
        throw std::invalid_argument("bilinear form: lattice specs differ");
}

// Shared Duhamel integrator.  Per mode k the running integral
//   I_m = integral_0^{t_m} e^{-mu (t_m - s) |k|^2} W(s,k) ds
// advances by the exact interval decay plus the closed-form contribution of
// the linearly interpolated W (kern_w0/kern_w1).  outer_exponent(t, |k|)
// multiplies the stored node value (0 for the plain form, mu b(t)|k| for the
// weighted one); node values carry the leading minus sign of the Duhamel
// term.
Trajectory integrate_duhamel(const std::vector<double>& grid, const std::vector<SpectralField>& W,
                             double mu, const std::function<double(double, double)>& outer_exponent) {
    const LatticeSpec spec = W[0].spec;
    const int N = spec.N;
    const std::size_t M = grid.size();
    bool real_flag = W[0].real_valued;

    Trajectory out;
    out.grid = grid;
    out.fields.reserve(M);
    for (std::size_t m = 0; m < M; ++m)
        out.fields.emplace_back(spec, real_flag, /*divfree=*/true);

    std::size_t slots = W[0].data.size();
    std::vector<Coeff> I(slots, Coeff{});
    for (std::size_t m = 0; m + 1 < M; ++m) {
        double h = grid[m + 1] - grid[m];
        for (int a = -N; a <= N; ++a)
            for (int b = -N; b <= N; ++b)
                for (int c = -N; c <= N; ++c) {
                    WaveVector k{a, b, c};
                    if (k.is_zero()) continue;
                    std::size_t s = W[0].slot(k);
                    double r = mu * double(k.norm2_int());
                    double z = r * h;
                    double w0 = kern_w0(z), w1 = kern_w1(z);
                    double decay = std::exp(-z);
                    const Coeff& W0 = W[m].data[s];
                    const Coeff& W1 = W[m + 1].data[s];
                    Coeff contrib;
                    for (int i = 0; i < 3; ++i)
                        contrib[i] = h * (W1[i] * w0 - (W1[i] - W0[i]) * w1);
                    Coeff& acc = I[s];
                    for (int i = 0; i < 3; ++i) acc[i] = decay * acc[i] + contrib[i];
                    double outer = outer_exponent(grid[m + 1], std::sqrt(double(k.norm2_int())));
                    double factor = outer == 0.0 ? 1.0 : std::exp(outer);
                    Coeff& dst = out.fields[m + 1].data[s];
                    for (int i = 0; i < 3; ++i) dst[i] = -factor * acc[i];
                }
    }
    return out;
}

}  // namespace

TensorField truncated_convolution(const SpectralField& F, const SpectralField& G, ConvPath path) {
    if (!(F.spec == G.spec))
        throw std::invalid_argument("truncated_convolution: lattice specs differ");
    return path == ConvPath::fast ? convolution_fast(F, G) : convolution_direct(F, G);
}

bool quadratic_interaction_vanishes(const SpectralField& f) {
    int N = f.spec.N;
    bool any = false;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                if (coeff_abs(f.at(k)) == 0.0) continue;
                any = true;
                if (std::abs(a) != N || std::abs(b) != N || std::abs(c) != N) return false;
            }
    return any;
}

namespace {

// Both inputs corner-supported at every node: the quadratic term vanishes
// identically, so hand back exact zeros instead of convolving.
bool corner_supported_pair(const Trajectory& F, const Trajectory& G) {
    for (const SpectralField& f : F.fields)
        if (!quadratic_interaction_vanishes(f) && f.max_coeff_abs() != 0.0) return false;
    for (const SpectralField& g : G.fields)
        if (!quadratic_interaction_vanishes(g) && g.max_coeff_abs() != 0.0) return false;
    return true;
}

Trajectory zero_duhamel(const Trajectory& F, const Trajectory& G) {
    bool real_flag = F.fields[0].real_valued && G.fields[0].real_valued;
    Trajectory out;
    out.grid = F.grid;
    out.fields.reserve(F.grid.size());
    for (std::size_t m = 0; m < F.grid.size(); ++m)
        out.fields.emplace_back(F.fields[0].spec, real_flag, /*divfree=*/true);
    return out;
}

}  // namespace

Trajectory bilinear_form(const Trajectory& F, const Trajectory& G, double mu, ConvPath path) {
    require_compatible(F, G);
    if (!(mu > 0.0)) throw std::invalid_argument("bilinear form: viscosity must be positive");
    if (corner_supported_pair(F, G)) return zero_duhamel(F, G);
    std::size_t M = F.grid.size();
    bool real_flag = F.fields[0].real_valued && G.fields[0].real_valued;
    std::vector<SpectralField> W;
    W.reserve(M);
    for (std::size_t m = 0; m < M; ++m) {
        TensorField T = truncated_convolution(F.fields[m], G.fields[m], path);
        W.push_back(projected_divergence(T, real_flag));
    }
    return integrate_duhamel(F.grid, W, mu, [](double, double) { return 0.0; });
}

Trajectory weighted_bilinear_form(const Trajectory& F, const Trajectory& G,
                                  const KernelSchedule& sched, ConvPath path) {
    require_compatible(F, G);
    sched.validate();
    if (sched.weight_kind == WeightKind::none)
        throw std::invalid_argument("weighted bilinear form: schedule has no weight profile");
    const std::vector<double>& grid = F.grid;
    int N = F.fields[0].spec.N;
    // The outer factor e^{mu b(t_max) |k|} is the largest weight applied.
    double worst = sched.mu * sched.b(grid.back()) * std::sqrt(3.0) * double(N);
    if (worst > 700.0)
        throw std::range_error("weighted bilinear form: exponent mu*b(t_max)*sqrt(3)*N = " +
                               format_double(worst) + " exceeds double range (limit 700)");
    if (corner_supported_pair(F, G)) return zero_duhamel(F, G);
    std::size_t M = grid.size();
    bool real_flag = F.fields[0].real_valued && G.fields[0].real_valued;
    std::vector<SpectralField> W;
    W.reserve(M);
    for (std::size_t m = 0; m < M; ++m) {
        // De-weight at the integrand time: factors e^{-mu b(s)|k|} <= 1.
        SpectralField Fm = gevrey_weight(F.fields[m], sched.mu, sched.b(grid[m]),
                                         WeightDirection::invert);
        SpectralField Gm = gevrey_weight(G.fields[m], sched.mu, sched.b(grid[m]),
                                         WeightDirection::invert);
        TensorField T = truncated_convolution(Fm, Gm, path);
        W.push_back(projected_divergence(T, real_flag));
    }
    double mu = sched.mu;
    KernelSchedule sc = sched;
    return integrate_duhamel(grid, W, mu,
                             [sc](double t, double kabs) { return sc.mu * sc.b(t) * kabs; });
}

double measure_bilinear_constant(const LatticeSpec& spec, double mu,
                                 const std::vector<double>& grid, int pairs, std::uint64_t seed,
                                 ConvPath path) {
    if (pairs < 1) throw std::invalid_argument("measure_bilinear_constant: need at least one pair");
    double best = 0.0;
    for (int p = 0; p < pairs; ++p) {
        SpectralField f0 = make_random_divfree(spec, 1.0, 2.0, seed + 2 * std::uint64_t(p));
        SpectralField g0 = make_random_divfree(spec, 1.0, 2.0, seed + 2 * std::uint64_t(p) + 1);
        Trajectory F = heat_propagate(f0, mu, grid);
        Trajectory G = heat_propagate(g0, mu, grid);
        double nf = triple_norm(F, mu), ng = triple_norm(G, mu);
        if (nf == 0.0 || ng == 0.0) continue;
        Trajectory B = bilinear_form(F, G, mu, path);
        double ratio = triple_norm(B, mu) / (nf * ng);
        if (ratio > best) best = ratio;
    }
    return best;
}

}  // namespace pmns
