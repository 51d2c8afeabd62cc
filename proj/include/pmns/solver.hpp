#pragma once
// Successive-approximation construction of the mild solution: iterate
// x_{n+1} = x_0 + B(x_n, x_n) in the triple norm, with the classical
// fixed-point smallness test 4 eta |||x_0||| < 1, contraction monitoring,
// and a Duhamel-residual verification.

#include <stdexcept>
#include <string>
#include <vector>

#include "pmns/field.hpp"
#include "pmns/norms.hpp"
#include "pmns/operators.hpp"

namespace pmns {

struct GridSpec {
    double t_min = 1e-4;
    double t_max = 10.0;
    int nodes = 128;  // positive nodes; t=0 is prepended
    GridSpacing spacing = GridSpacing::geometric;
};

struct SolverConfig {
    LatticeSpec spec;
    double mu = 1.0;
    GridSpec grid;
    double eta = 0.0;      // smallness constant; <= 0 means "measure it"
    int max_iter = 12;
    double tol = 1e-10;    // triple-norm successive-difference stop threshold
    KernelSchedule sched;  // weight_kind none -> plain solve
    ConvPath path = ConvPath::fast;
    int eta_pairs = 4;     // random pairs for the measured constant
    std::uint64_t eta_seed = 20260801ull;
    bool allow_inadmissible = false;  // proceed past a failed smallness check

    void validate() const;  // t_min > 0, nodes >= 16, tol > 0, mu > 0
    std::vector<double> make_grid() const;
};

enum class StopReason { converged, max_iter, diverged };
std::string stop_reason_name(StopReason r);

struct ConvergenceReport {
    std::vector<double> triple_norms;  // |||x_n||| per iteration
    std::vector<double> diff_norms;    // |||x_{n+1} - x_n|||
    std::vector<double> ratios;        // diff_n / diff_{n-1}
    StopReason stop = StopReason::max_iter;
    double eta_used = 0.0;
    double x0_triple = 0.0;
    bool admissible = false;
    double margin = 0.0;            // 1 - 4 eta |||x_0|||
    bool truncated_nonlinearity = false;  // all input energy at the outermost shell
};

struct SmallnessResult {
    bool admissible = false;
    double margin = 0.0;
    double eta = 0.0;
    double x0_triple = 0.0;
};

class DivergenceError : public std::runtime_error {
  public:
    ConvergenceReport report;
    explicit DivergenceError(ConvergenceReport r)
        : std::runtime_error("iteration diverged: successive-difference ratio >= 1 for 3 consecutive steps"),
          report(std::move(r)) {}
};

// Builds x_0 (weighted when the schedule is active) and evaluates the
// smallness margin 1 - 4 eta |||x_0|||.  eta <= 0 in the config triggers the
// measured bilinear constant.
SmallnessResult smallness_check(const SpectralField& v0, const SolverConfig& cfg);

// Plain mild-solution iteration (schedule weight must be none).  On
// convergence the classical bounds |||x||| <= 2 |||x_0||| and
// |||x||| < 1/(2 eta) are asserted.  Divergence (ratio >= 1 three times in a
// row) throws DivergenceError carrying the report.
std::pair<Trajectory, ConvergenceReport> picard_solve(const SpectralField& v0,
                                                      const SolverConfig& cfg);

// Weighted iteration for V = weighted heat term + B_w(V, V); returns the
// weighted trajectory V.  The physical solution is recoverable by inverting
// the per-node weight.
std::pair<Trajectory, ConvergenceReport> gevrey_solve(const SpectralField& v0,
                                                      const SolverConfig& cfg);

// Triple norm of traj - (x_0 + B(traj, traj)); for a converged solve this is
// on the order of the stop tolerance.
double residual_check(const Trajectory& traj, const SpectralField& v0, const SolverConfig& cfg);

// Inverts the schedule weight node-by-node (V -> v).
Trajectory unweight_trajectory(const Trajectory& traj, const KernelSchedule& sched);

}  // namespace pmns
