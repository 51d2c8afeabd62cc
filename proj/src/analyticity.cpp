#include "pmns/analyticity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace pmns {

std::string node_status_name(NodeStatus s) {
    switch (s) {
        case NodeStatus::pass: return "pass";
        case NodeStatus::fail: return "fail";
        case NodeStatus::truncation_limited: return "truncation_limited";
        case NodeStatus::insufficient_shells: return "insufficient_shells";
    }
    return "?";
}

namespace {

struct UsableMode {
    double kabs;
    double weighted;  // |k|^2 |v^(k)|
};

// Collects |k| and |k|^2 |v^| for modes above the floor, plus the number of
// distinct |k| values in the full (unfloored) support.
void collect_modes(const SpectralField& f, double floor_abs, std::vector<UsableMode>& usable,
                   int& support_shells) {
    usable.clear();
    std::set<std::int64_t> support_norms;
    int N = f.spec.N;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                double mag = coeff_abs(f.at(k));
                if (mag == 0.0) continue;
                support_norms.insert(k.norm2_int());
                if (mag > floor_abs)
                    usable.push_back({k.euclid_norm(), double(k.norm2_int()) * mag});
            }
    support_shells = int(support_norms.size());
}

// The decision predicate: is decay rate rho consistent with the usable modes?
// Anchored at the smallest usable |k| so only the rate matters.
bool rho_admissible(const std::vector<UsableMode>& usable, double kmin, double pm2_usable,
                    double kappa, double rho) {
    double bound = kappa * pm2_usable;
    for (const UsableMode& m : usable) {
        double lhs = m.weighted * std::exp(rho * (m.kabs - kmin));
        if (lhs > bound) return false;
    }
    return true;
}

}  // namespace

DecayRadiusResult decay_radius_estimate(const SpectralField& f, double kappa, double floor_abs) {
    if (!(kappa > 1.0)) throw std::invalid_argument("decay_radius_estimate: kappa must exceed 1");
    double maxmag = f.max_coeff_abs();
    if (maxmag == 0.0) throw std::invalid_argument("decay_radius_estimate: zero field");
    if (floor_abs < 0.0) floor_abs = 1e-14 * maxmag;

    std::vector<UsableMode> usable;
    int support_shells = 0;
    collect_modes(f, floor_abs, usable, support_shells);

    DecayRadiusResult out;
    if (usable.empty()) {  // possible only with a caller-supplied floor >= max
        out.status = RadiusStatus::insufficient_shells;
        return out;
    }
    double kmin = usable.front().kabs, kmax = kmin;
    std::set<double> shells;
    double pm2_usable = 0.0;
    for (const UsableMode& m : usable) {
        kmin = std::min(kmin, m.kabs);
        kmax = std::max(kmax, m.kabs);
        shells.insert(m.kabs);
        pm2_usable = std::max(pm2_usable, m.weighted);
    }
    out.kmin_usable = kmin;
    out.kmax_usable = kmax;
    out.usable_shells = int(shells.size());

    // Bisection upper limit: a rate beyond log(max/floor) per unit |k| could
    // never be distinguished on this lattice; pad by a factor 2 headroom.
    double rho_hi = 2.0 * std::log(maxmag / floor_abs) / std::max(1.0, kmax - kmin);

    if (out.usable_shells < 2) {
        out.status = RadiusStatus::insufficient_shells;
        out.rho = rho_hi;
        return out;
    }

    double lo = 0.0, hi = rho_hi;
    if (!rho_admissible(usable, kmin, pm2_usable, kappa, lo)) {
        out.rho = 0.0;  // cannot happen for kappa > 1 (lhs <= pm2_usable at rho = 0)
        return out;
    }
    if (rho_admissible(usable, kmin, pm2_usable, kappa, hi)) {
        out.rho = hi;
        return out;
    }
    for (int it = 0; it < 64; ++it) {
        double mid = 0.5 * (lo + hi);
        if (rho_admissible(usable, kmin, pm2_usable, kappa, mid))
            lo = mid;
        else
            hi = mid;
    }
    out.rho = lo;
    return out;
}

RadiusProfile radius_profile(const Trajectory& traj, double mu, double alpha, double kappa) {
    traj.validate();
    if (!(mu > 0.0)) throw std::invalid_argument("radius_profile: viscosity must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("radius_profile: alpha must lie in (0,1)");
    RadiusProfile prof;
    int N = traj.fields[0].spec.N;
    for (std::size_t m = 1; m < traj.nodes(); ++m) {
        const SpectralField& f = traj.fields[m];
        double t = traj.grid[m];
        RadiusNode node;
        node.t = t;
        node.bound_sqrt = mu * std::sqrt(t);
        node.bound_alpha = mu * alpha * t;
        double maxmag = f.max_coeff_abs();
        if (maxmag == 0.0) {
            node.status = NodeStatus::insufficient_shells;
            prof.excluded++;
            prof.nodes.push_back(node);
            continue;
        }
        DecayRadiusResult est = decay_radius_estimate(f, kappa);
        node.rho = est.rho;
        node.kmin_usable = est.kmin_usable;
        node.kmax_usable = est.kmax_usable;
        node.tol_rho = std::log(kappa) / est.kmax_usable;

        // Floor-visibility horizon: when the expected weight mu b(t) |k|
        // exceeds the dynamic range above the coefficient floor at the
        // lattice edge, the measurement is capped by truncation, not by the
        // field's true decay.
        double horizon = std::log(1e14);  // floor is 1e-14 * max coefficient
        double expected = mu * std::max(std::sqrt(t), alpha * t) * double(N);
        bool beyond_horizon = expected > horizon;

        if (est.status == RadiusStatus::insufficient_shells) {
            // Distinguish a spectrum that *is* one shell from one clipped to
            // one shell by the floor.
            std::vector<UsableMode> all;
            int support_shells = 0;
            collect_modes(f, 0.0, all, support_shells);
            node.status = support_shells >= 2 ? NodeStatus::truncation_limited
                                              : NodeStatus::insufficient_shells;
            prof.excluded++;
        } else if (beyond_horizon) {
            node.status = NodeStatus::truncation_limited;
            prof.excluded++;
        } else {
            double target = std::max(node.bound_sqrt, node.bound_alpha) - node.tol_rho;
            node.status = node.rho >= target ? NodeStatus::pass : NodeStatus::fail;
            (node.status == NodeStatus::pass ? prof.passes : prof.fails)++;
        }
        prof.nodes.push_back(node);
    }
    return prof;
}

ClaimsGrid default_claims_grid() {
    ClaimsGrid g;
    g.times.push_back(0.0);
    const int n = 64;
    for (int i = 0; i < n; ++i)
        g.times.push_back(1e-4 * std::exp(std::log(10.0 / 1e-4) * double(i) / double(n - 1)));
    for (int k = 1; k <= 16; ++k) g.k_values.push_back(k);
    g.mus = {0.25, 1.0, 4.0};
    g.alphas = {0.1, 0.5, 0.9};
    return g;
}

long claims_check(const ClaimsGrid& grid) {
    const double tol = 1e-12;
    // The Duhamel pair loop needs s <= t, so order the times regardless of
    // how the caller assembled the grid.
    std::vector<double> times = grid.times;
    std::sort(times.begin(), times.end());
    if (!times.empty() && times.front() < 0.0)
        throw std::invalid_argument("claims_check: times must be non-negative");
    long violations = 0;
    for (double mu : grid.mus)
        for (int kv : grid.k_values) {
            double k = double(kv), k2 = k * k;
            // Propagator weights: single time argument.
            for (double t : times) {
                double lhs_sqrt = mu * std::sqrt(t) * k - mu * t * k2;
                double rhs_sqrt = 0.5 * mu - 0.5 * mu * t * k2;
                if (lhs_sqrt - rhs_sqrt > tol) ++violations;
                for (double a : grid.alphas) {
                    double lhs_lin = mu * a * t * k - mu * t * k2;
                    if (lhs_lin - 0.0 > tol) ++violations;
                }
            }
            // Duhamel weights: ordered pairs s <= t.
            for (std::size_t i = 0; i < times.size(); ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    double t = times[i], s = times[j];
                    double dt = t - s;
                    double lhs_sqrt = mu * (std::sqrt(t) - std::sqrt(s)) * k - mu * dt * k2;
                    double rhs_sqrt = 0.5 * mu - 0.5 * mu * dt * k2;
                    if (lhs_sqrt - rhs_sqrt > tol) ++violations;
                    for (double a : grid.alphas) {
                        double lhs_lin = mu * a * dt * k - mu * dt * k2;
                        double rhs_lin = -(1.0 - a) * mu * dt * k2;
                        if (lhs_lin - rhs_lin > tol) ++violations;
                    }
                }
        }
    return violations;
}

}  // namespace pmns
