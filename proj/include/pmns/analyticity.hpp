#pragma once
// Exponential Fourier-decay measurement (radius-of-analyticity proxy) and
// verification of the weight-kernel inequalities used by the weighted solver.

#include <string>
#include <vector>

#include "pmns/field.hpp"
#include "pmns/operators.hpp"

namespace pmns {

enum class RadiusStatus { ok, insufficient_shells };

struct DecayRadiusResult {
    double rho = 0.0;
    RadiusStatus status = RadiusStatus::ok;
    double kmin_usable = 0.0;  // smallest usable euclid |k|
    double kmax_usable = 0.0;  // largest usable euclid |k|
    int usable_shells = 0;     // distinct usable euclid norms
};

// Largest rho (bisection) such that
//   sup over usable k of |k|^2 |v^(k)| e^{rho (|k| - kmin)}  <=  kappa * P,
// where "usable" means |v^(k)| > floor (default 1e-14 * max coefficient),
// kmin is the smallest usable |k| and P = max usable |k|^2 |v^(k)|.
// Anchoring the exponential at kmin makes the criterion scale-invariant and
// independent of the overall prefactor, so it measures the decay *rate*; for
// a field with |v^(k)| = A e^{-rho0 |k|} / |k|^2 the result is within
// log(kappa)/(kmax - kmin) of rho0.  Fields whose usable support has fewer
// than two distinct |k| values cannot constrain a rate: the result carries
// status insufficient_shells with rho equal to the bisection upper limit.
// Throws on a zero field or kappa <= 1.
DecayRadiusResult decay_radius_estimate(const SpectralField& f, double kappa = 2.0,
                                        double floor_abs = -1.0);

enum class NodeStatus { pass, fail, truncation_limited, insufficient_shells };
std::string node_status_name(NodeStatus s);

struct RadiusNode {
    double t = 0.0;
    double rho = 0.0;
    double bound_sqrt = 0.0;   // mu sqrt(t)
    double bound_alpha = 0.0;  // mu alpha t
    double tol_rho = 0.0;      // log(kappa) / kmax_usable
    double kmin_usable = 0.0;
    double kmax_usable = 0.0;
    NodeStatus status = NodeStatus::insufficient_shells;
};

struct RadiusProfile {
    std::vector<RadiusNode> nodes;  // positive grid nodes only
    int passes = 0, fails = 0, excluded = 0;
};

// Per positive node: decay_radius_estimate, compared against
// max(mu sqrt(t), mu alpha t) - tol_rho.  Nodes are excluded from PASS/FAIL
// when the expected decay outruns what the truncated lattice can display
// above the coefficient floor (mu b(t) N beyond the floor-visibility horizon
// log(max|v^|/floor)) or when floor clipping leaves fewer than two usable
// shells (truncation_limited), or when the field's entire support is a
// single shell (insufficient_shells).
RadiusProfile radius_profile(const Trajectory& traj, double mu, double alpha, double kappa = 2.0);

// Evaluates the four kernel-weight inequalities in log space over a sample
// grid and returns the violation count (tolerance 1e-12 on the log scale):
//   sqrt profile, propagator : mu sqrt(t) |k| - mu t |k|^2      <= mu/2 - mu t |k|^2 / 2
//   linear profile, propagator: mu a t |k| - mu t |k|^2          <= 0
//   sqrt profile, Duhamel     : mu (sqrt t - sqrt s)|k| - mu (t-s)|k|^2
//                                                               <= mu/2 - mu (t-s) |k|^2 / 2
//   linear profile, Duhamel   : mu a (t-s)|k| - mu (t-s)|k|^2   <= -(1-a) mu (t-s) |k|^2
struct ClaimsGrid {
    std::vector<double> times;   // includes 0; pairs use s <= t
    std::vector<int> k_values;   // |k| arguments
    std::vector<double> mus;
    std::vector<double> alphas;
};
ClaimsGrid default_claims_grid();
long claims_check(const ClaimsGrid& grid);

}  // namespace pmns
