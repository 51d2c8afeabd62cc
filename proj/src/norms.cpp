#include "pmns/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace pmns {

QuadRule parse_quad_rule(const std::string& name) {
    if (name == "trapezoid") return QuadRule::trapezoid;
    if (name == "exact-kernel") return QuadRule::exact_kernel;
    throw std::invalid_argument("unknown quadrature rule: " + name +
                                " (expected trapezoid or exact-kernel)");
}

double pm_norm(const SpectralField& f, double a) {
    if (a < 0.0) throw std::invalid_argument("pm_norm: exponent must be >= 0");
    int N = f.spec.N;
    double best = 0.0;
    for (int i = -N; i <= N; ++i)
        for (int j = -N; j <= N; ++j)
            for (int l = -N; l <= N; ++l) {
                WaveVector k{i, j, l};
                if (k.is_zero()) continue;
                double mag = coeff_abs(f.at(k));
                if (mag == 0.0) continue;
                double v = std::pow(double(k.norm2_int()), 0.5 * a) * mag;
                if (v > best) best = v;
            }
    return best;
}

double st_pm_norm(const Trajectory& traj, double b) {
    traj.validate();
    double best = 0.0;
    for (const auto& f : traj.fields) {
        double v = pm_norm(f, b);
        if (v > best) best = v;
    }
    return best;
}

ZNormResult z_norm(const Trajectory& traj, double c, QuadRule rule, double mu) {
    traj.validate();
    if (c < 0.0) throw std::invalid_argument("z_norm: exponent must be >= 0");
    if (!(mu > 0.0)) throw std::invalid_argument("z_norm: viscosity must be positive");
    const int N = traj.fields[0].spec.N;
    const std::size_t M = traj.nodes();
    ZNormResult out;
    std::vector<double> mags(M);
    for (int i = -N; i <= N; ++i)
        for (int j = -N; j <= N; ++j)
            for (int l = -N; l <= N; ++l) {
                WaveVector k{i, j, l};
                if (k.is_zero()) continue;
                double w = std::pow(double(k.norm2_int()), 0.5 * c);
                bool any = false;
                for (std::size_t m = 0; m < M; ++m) {
                    mags[m] = w * coeff_abs(traj.fields[m].at(k));
                    any = any || mags[m] != 0.0;
                }
                if (!any) continue;
                double integral = 0.0;
                for (std::size_t m = 0; m + 1 < M; ++m) {
                    double h = traj.grid[m + 1] - traj.grid[m];
                    double m0 = mags[m], m1 = mags[m + 1];
                    if (rule == QuadRule::exact_kernel && m0 > 0.0 && m1 > 0.0 && m0 != m1) {
                        // Exponential through the endpoints: exact for decay
                        // A e^{-r(t - t_m)}, and always between the endpoint
                        // rectangle rules.
                        integral += h * (m1 - m0) / std::log(m1 / m0);
                    } else {
                        integral += 0.5 * h * (m0 + m1);
                    }
                }
                if (integral > out.value) out.value = integral;
                // Envelope estimate beyond t_M: |v^| <= |v^(t_M)| e^{-mu (t-t_M) |k|^2}.
                double tail = mags[M - 1] / (mu * double(k.norm2_int()));
                if (tail > out.tail) out.tail = tail;
            }
    return out;
}

double triple_norm(const Trajectory& traj, double mu) {
    return st_pm_norm(traj, 2.0) + z_norm(traj, 4.0, QuadRule::exact_kernel, mu).value;
}

double ck_seminorm(const Trajectory& traj, double a) {
    traj.validate();
    if (!(a > 2.0 && a < 3.0))
        throw std::invalid_argument("ck_seminorm: exponent must lie in (2,3)");
    double best = 0.0;
    for (std::size_t m = 1; m < traj.nodes(); ++m) {
        double v = std::pow(traj.grid[m], 0.5 * a - 1.0) * pm_norm(traj.fields[m], a);
        if (v > best) best = v;
    }
    return best;
}

NormReport make_norm_report(const Trajectory& traj, double mu, QuadRule rule,
                            std::optional<double> ck_exponent) {
    traj.validate();
    NormReport r;
    r.pm2 = pm_norm(traj.fields[0], 2.0);
    for (std::size_t m = 1; m < traj.nodes(); ++m) {
        double v = pm_norm(traj.fields[m], 4.0);
        if (v > r.pm4) r.pm4 = v;
    }
    r.st_pm2 = st_pm_norm(traj, 2.0);
    ZNormResult z = z_norm(traj, 4.0, rule, mu);
    r.z4 = z.value;
    r.z4_tail = z.tail;
    r.triple = r.st_pm2 + r.z4;
    if (ck_exponent) {
        r.ck_exponent = *ck_exponent;
        r.ck = ck_seminorm(traj, *ck_exponent);
    }
    return r;
}

}  // namespace pmns
