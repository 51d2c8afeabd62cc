#include "pmns/field.hpp"

#include <cmath>
#include <stdexcept>

#include "pmns/util.hpp"

namespace pmns {

SpectralField::SpectralField(const LatticeSpec& s, bool real, bool divfree)
    : spec(s), real_valued(real), div_free(divfree) {
    if (s.N < 1) throw std::invalid_argument("SpectralField: lattice truncation N must be >= 1");
    data.assign(std::size_t(side()) * side() * side(), Coeff{});
}

void SpectralField::set(const WaveVector& k, const Coeff& c) {
    if (k.is_zero()) throw std::invalid_argument("SpectralField::set: zero mode is excluded (mean-zero field)");
    if (!contains(k)) throw std::invalid_argument("SpectralField::set: wavevector outside lattice truncation");
    data[slot(k)] = c;
}

double SpectralField::max_coeff_abs() const {
    double m = 0.0;
    for (const Coeff& c : data) {
        double a = coeff_abs(c);
        if (a > m) m = a;
    }
    return m;
}

double SpectralField::max_divergence_rel() const {
    int N = spec.N;
    double worst = 0.0;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                const Coeff& v = at(k);
                double mag = coeff_abs(v);
                if (mag == 0.0) continue;
                Complex dot = double(k.k1) * v[0] + double(k.k2) * v[1] + double(k.k3) * v[2];
                double rel = std::abs(dot) / (mag * k.euclid_norm());
                if (rel > worst) worst = rel;
            }
    return worst;
}

double SpectralField::max_conj_asym() const {
    int N = spec.N;
    double worst = 0.0;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                const Coeff& v = at(k);
                const Coeff& w = at(-k);
                Coeff diff{w[0] - std::conj(v[0]), w[1] - std::conj(v[1]), w[2] - std::conj(v[2])};
                double d = coeff_abs(diff);
                if (d > worst) worst = d;
            }
    return worst;
}

namespace {
void require_same_spec(const SpectralField& a, const SpectralField& b, const char* who) {
    if (!(a.spec == b.spec)) throw std::invalid_argument(std::string(who) + ": lattice specs differ");
}
}  // namespace

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    require_same_spec(a, b, "field addition");
    SpectralField out(a.spec, a.real_valued && b.real_valued, a.div_free && b.div_free);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    require_same_spec(a, b, "field subtraction");
    SpectralField out(a.spec, a.real_valued && b.real_valued, a.div_free && b.div_free);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField out(a.spec, a.real_valued, a.div_free);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = s * a.data[i];
    return out;
}

void Trajectory::validate() const {
    if (grid.size() < 3) throw std::invalid_argument("trajectory: need t=0 plus at least two positive nodes");
    if (grid.size() != fields.size())
        throw std::invalid_argument("trajectory: grid/field count mismatch");
    if (grid[0] != 0.0) throw std::invalid_argument("trajectory: grid must start at exactly t=0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("trajectory: grid must be strictly increasing");
    for (std::size_t i = 1; i < fields.size(); ++i)
        if (!(fields[i].spec == fields[0].spec))
            throw std::invalid_argument("trajectory: all nodes must share one lattice spec");
}

namespace {
void require_same_grid(const Trajectory& a, const Trajectory& b, const char* who) {
    if (a.grid != b.grid) throw std::invalid_argument(std::string(who) + ": time grids differ");
}
}  // namespace

Trajectory operator+(const Trajectory& a, const Trajectory& b) {
    require_same_grid(a, b, "trajectory addition");
    Trajectory out;
    out.grid = a.grid;
    out.fields.reserve(a.fields.size());
    for (std::size_t i = 0; i < a.fields.size(); ++i) out.fields.push_back(a.fields[i] + b.fields[i]);
    return out;
}

Trajectory operator-(const Trajectory& a, const Trajectory& b) {
    require_same_grid(a, b, "trajectory subtraction");
    Trajectory out;
    out.grid = a.grid;
    out.fields.reserve(a.fields.size());
    for (std::size_t i = 0; i < a.fields.size(); ++i) out.fields.push_back(a.fields[i] - b.fields[i]);
    return out;
}

Trajectory operator*(double s, const Trajectory& a) {
    Trajectory out;
    out.grid = a.grid;
    out.fields.reserve(a.fields.size());
    for (const auto& f : a.fields) out.fields.push_back(s * f);
    return out;
}

std::vector<double> make_time_grid(double t_min, double t_max, int nodes, GridSpacing spacing) {
    if (!(t_min > 0.0)) throw std::invalid_argument("time grid: t_min must be positive");
    if (!(t_max > t_min)) throw std::invalid_argument("time grid: t_max must exceed t_min");
    if (nodes < 2) throw std::invalid_argument("time grid: need at least two positive nodes");
    std::vector<double> g;
    g.reserve(std::size_t(nodes) + 1);
    g.push_back(0.0);
    if (spacing == GridSpacing::geometric) {
        double lr = std::log(t_max / t_min);
        for (int i = 0; i < nodes; ++i)
            g.push_back(t_min * std::exp(lr * double(i) / double(nodes - 1)));
    } else {
        for (int i = 0; i < nodes; ++i)
            g.push_back(t_min + (t_max - t_min) * double(i) / double(nodes - 1));
    }
    g.back() = t_max;  // avoid roundoff drift on the endpoint
    return g;
}

SpectralField make_single_mode(const LatticeSpec& spec, const WaveVector& k0, const Coeff& amplitude,
                               bool realify, bool divfree) {
    if (k0.is_zero() || k0.sup_norm() > spec.N)
        throw std::invalid_argument("make_single_mode: k0 outside the punctured truncated lattice");
    if (divfree) {
        Complex dot = double(k0.k1) * amplitude[0] + double(k0.k2) * amplitude[1] +
                      double(k0.k3) * amplitude[2];
        double mag = coeff_abs(amplitude);
        if (std::abs(dot) > 1e-12 * (mag == 0.0 ? 1.0 : mag) * k0.euclid_norm())
            throw std::invalid_argument("make_single_mode: amplitude not orthogonal to k0");
    }
    SpectralField f(spec, realify, divfree);
    f.set(k0, amplitude);
    if (realify) f.set(-k0, {std::conj(amplitude[0]), std::conj(amplitude[1]), std::conj(amplitude[2])});
    return f;
}

SpectralField make_taylor_green(const LatticeSpec& spec, double eps) {
    if (spec.N < 1) throw std::invalid_argument("make_taylor_green: need N >= 1");
    SpectralField f(spec, /*real=*/true, /*divfree=*/true);
    // sin x cos y cos z = sum over signs s1,s2,s3 of (s1 / 8i) e^{i(s1 x + s2 y + s3 z)}
    // and s1/(8i) = -i s1 / 8; likewise for the second component with -cos sin cos.
    for (int s1 = -1; s1 <= 1; s1 += 2)
        for (int s2 = -1; s2 <= 1; s2 += 2)
            for (int s3 = -1; s3 <= 1; s3 += 2) {
                Coeff c{Complex(0.0, -eps * s1 / 8.0), Complex(0.0, eps * s2 / 8.0), Complex(0.0, 0.0)};
                f.set({s1, s2, s3}, c);
            }
    return f;
}

SpectralField make_random_divfree(const LatticeSpec& spec, double eps, double decay_exponent,
                                  std::uint64_t seed) {
    if (decay_exponent < 2.0)
        throw std::invalid_argument("make_random_divfree: decay exponent must be >= 2");
    SpectralField f(spec, /*real=*/true, /*divfree=*/true);
    Rng rng(seed);
    int N = spec.N;
    // Half-lattice: lexicographically positive k only; the mirror mode gets
    // the conjugate so the field is real-valued.
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                bool positive = (a > 0) || (a == 0 && b > 0) || (a == 0 && b == 0 && c > 0);
                if (!positive) continue;
                Coeff raw;
                for (int i = 0; i < 3; ++i)
                    raw[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
                // Project out the longitudinal component so k . v^ = 0.
                double kk = double(k.norm2_int());
                Complex dot = double(k.k1) * raw[0] + double(k.k2) * raw[1] + double(k.k3) * raw[2];
                Coeff proj{raw[0] - dot * double(k.k1) / kk, raw[1] - dot * double(k.k2) / kk,
                           raw[2] - dot * double(k.k3) / kk};
                double mag = coeff_abs(proj);
                if (mag == 0.0) continue;  // degenerate draw; leave the mode empty
                double target = eps * rng.uniform(0.25, 1.0) / std::pow(k.euclid_norm(), decay_exponent);
                Coeff scaled = (target / mag) * proj;
                f.set(k, scaled);
                f.set(-k, {std::conj(scaled[0]), std::conj(scaled[1]), std::conj(scaled[2])});
            }
    return f;
}

}  // namespace pmns
