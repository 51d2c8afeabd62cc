#include "pmns/solver.hpp"

#include <cmath>

#include "pmns/util.hpp"

namespace pmns {

void SolverConfig::validate() const {
    if (spec.N < 1) throw std::invalid_argument("solver config: lattice truncation N must be >= 1");
    if (!(mu > 0.0)) throw std::invalid_argument("solver config: viscosity must be positive");
    if (!(grid.t_min > 0.0)) throw std::invalid_argument("solver config: t_min must be positive");
    if (!(grid.t_max > grid.t_min))
        throw std::invalid_argument("solver config: t_max must exceed t_min");
    if (grid.nodes < 16) throw std::invalid_argument("solver config: need at least 16 grid nodes");
    if (!(tol > 0.0)) throw std::invalid_argument("solver config: tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("solver config: max_iter must be >= 1");
    KernelSchedule s = sched;
    s.mu = mu;
    s.validate();
}

std::vector<double> SolverConfig::make_grid() const {
    return make_time_grid(grid.t_min, grid.t_max, grid.nodes, grid.spacing);
}

std::string stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::converged: return "converged";
        case StopReason::max_iter: return "max_iter";
        case StopReason::diverged: return "diverged";
    }
    return "?";
}

namespace {

// x_0: the propagated initial datum, weighted when the schedule is active.
Trajectory initial_iterate(const SpectralField& v0, const SolverConfig& cfg,
                           const std::vector<double>& grid) {
    KernelSchedule sched = cfg.sched;
    sched.mu = cfg.mu;
    if (sched.weight_kind == WeightKind::none) return heat_propagate(v0, cfg.mu, grid);
    return heat_propagate_weighted(v0, sched, grid);
}

double resolve_eta(const SpectralField& v0, const SolverConfig& cfg,
                   const std::vector<double>& grid) {
    if (cfg.eta > 0.0) return cfg.eta;
    (void)v0;
    return measure_bilinear_constant(cfg.spec, cfg.mu, grid, cfg.eta_pairs, cfg.eta_seed, cfg.path);
}

Trajectory apply_bilinear(const Trajectory& x, const SolverConfig& cfg) {
    KernelSchedule sched = cfg.sched;
    sched.mu = cfg.mu;
    if (sched.weight_kind == WeightKind::none) return bilinear_form(x, x, cfg.mu, cfg.path);
    return weighted_bilinear_form(x, x, sched, cfg.path);
}

std::pair<Trajectory, ConvergenceReport> iterate(const SpectralField& v0, const SolverConfig& cfg) {
    cfg.validate();
    std::vector<double> grid = cfg.make_grid();
    Trajectory x0 = initial_iterate(v0, cfg, grid);

    ConvergenceReport rep;
    rep.eta_used = resolve_eta(v0, cfg, grid);
    rep.x0_triple = triple_norm(x0, cfg.mu);
    rep.admissible = 4.0 * rep.eta_used * rep.x0_triple < 1.0;
    rep.margin = 1.0 - 4.0 * rep.eta_used * rep.x0_triple;
    rep.truncated_nonlinearity = quadratic_interaction_vanishes(v0);
    if (!rep.admissible && !cfg.allow_inadmissible)
        throw std::runtime_error(
            "smallness check failed: 4*eta*|||x0||| = " + format_double(1.0 - rep.margin) +
            " >= 1; pass allow_inadmissible to proceed anyway");

    Trajectory x = x0;
    rep.triple_norms.push_back(rep.x0_triple);
    if (rep.x0_triple == 0.0) {  // zero datum: x0 is already the fixed point
        rep.stop = StopReason::converged;
        rep.diff_norms.push_back(0.0);
        return {std::move(x), std::move(rep)};
    }

    int rising = 0;
    for (int it = 0; it < cfg.max_iter; ++it) {
        Trajectory next = x0 + apply_bilinear(x, cfg);
        double diff = triple_norm(next - x, cfg.mu);
        rep.diff_norms.push_back(diff);
        if (rep.diff_norms.size() >= 2) {
            double prev = rep.diff_norms[rep.diff_norms.size() - 2];
            rep.ratios.push_back(prev == 0.0 ? 0.0 : diff / prev);
        }
        x = std::move(next);
        rep.triple_norms.push_back(triple_norm(x, cfg.mu));
        if (!rep.ratios.empty() && rep.ratios.back() >= 1.0) {
            if (++rising >= 3) {
                rep.stop = StopReason::diverged;
                throw DivergenceError(rep);
            }
        } else {
            rising = 0;
        }
        if (diff <= cfg.tol) {
            rep.stop = StopReason::converged;
            return {std::move(x), std::move(rep)};
        }
    }
    rep.stop = StopReason::max_iter;
    return {std::move(x), std::move(rep)};
}

void assert_fixed_point_bounds(const Trajectory& x, const ConvergenceReport& rep, double mu) {
    if (rep.stop != StopReason::converged || rep.x0_triple == 0.0) return;
    double final_norm = triple_norm(x, mu);
    // Classical fixed-point bounds; allow a whisker of quadrature slack.
    if (final_norm > 2.0 * rep.x0_triple * (1.0 + 1e-9))
        throw std::runtime_error("converged iterate violates |||x||| <= 2 |||x0|||: " +
                                 format_double(final_norm) + " vs 2 * " +
                                 format_double(rep.x0_triple));
    if (rep.admissible && rep.eta_used > 0.0 && final_norm >= 0.5 / rep.eta_used)
        throw std::runtime_error("converged iterate violates |||x||| < 1/(2 eta)");
}

}  // namespace

SmallnessResult smallness_check(const SpectralField& v0, const SolverConfig& cfg) {
    cfg.validate();
    std::vector<double> grid = cfg.make_grid();
    Trajectory x0 = initial_iterate(v0, cfg, grid);
    SmallnessResult r;
    r.eta = resolve_eta(v0, cfg, grid);
    r.x0_triple = triple_norm(x0, cfg.mu);
    r.admissible = 4.0 * r.eta * r.x0_triple < 1.0;
    r.margin = 1.0 - 4.0 * r.eta * r.x0_triple;
    return r;
}

std::pair<Trajectory, ConvergenceReport> picard_solve(const SpectralField& v0,
                                                      const SolverConfig& cfg) {
    if (cfg.sched.weight_kind != WeightKind::none)
        throw std::invalid_argument("picard_solve: schedule must be unweighted (use gevrey_solve)");
    auto [x, rep] = iterate(v0, cfg);
    assert_fixed_point_bounds(x, rep, cfg.mu);
    return {std::move(x), std::move(rep)};
}

std::pair<Trajectory, ConvergenceReport> gevrey_solve(const SpectralField& v0,
                                                      const SolverConfig& cfg) {
    if (cfg.sched.weight_kind == WeightKind::none)
        throw std::invalid_argument("gevrey_solve: schedule must carry a weight profile");
    auto [x, rep] = iterate(v0, cfg);
    assert_fixed_point_bounds(x, rep, cfg.mu);
    return {std::move(x), std::move(rep)};
}

double residual_check(const Trajectory& traj, const SpectralField& v0, const SolverConfig& cfg) {
    cfg.validate();
    traj.validate();
    Trajectory x0 = initial_iterate(v0, cfg, traj.grid);
    KernelSchedule sched = cfg.sched;
    sched.mu = cfg.mu;
    Trajectory bt = sched.weight_kind == WeightKind::none
                        ? bilinear_form(traj, traj, cfg.mu, cfg.path)
                        : weighted_bilinear_form(traj, traj, sched, cfg.path);
    return triple_norm(traj - (x0 + bt), cfg.mu);
}

Trajectory unweight_trajectory(const Trajectory& traj, const KernelSchedule& sched) {
    traj.validate();
    Trajectory out;
    out.grid = traj.grid;
    out.fields.reserve(traj.nodes());
    for (std::size_t m = 0; m < traj.nodes(); ++m)
        out.fields.push_back(
            gevrey_weight(traj.fields[m], sched.mu, sched.b(traj.grid[m]), WeightDirection::invert));
    return out;
}

}  // namespace pmns
