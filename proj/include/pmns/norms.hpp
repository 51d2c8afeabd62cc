#pragma once
// Norm families: the weighted-coefficient sup norms PM^a on fields, their
// space-time sup/integral versions on trajectories, the triple norm used as
// the fixed-point contraction metric, and a weighted time-sup seminorm.

#include <optional>
#include <string>

#include "pmns/field.hpp"

namespace pmns {

enum class QuadRule { trapezoid, exact_kernel };
QuadRule parse_quad_rule(const std::string& name);  // throws on unknown id

struct ZNormResult {
    double value = 0.0;  // sup_k of the [0, t_M] quadrature
    double tail = 0.0;   // sup_k of the (t_M, inf) envelope estimate, reported separately
};

struct NormReport {
    double pm2 = 0.0;     // PM^2 of the t=0 node
    double pm4 = 0.0;     // max PM^4 over positive nodes
    double st_pm2 = 0.0;  // max over all nodes of PM^2
    double z4 = 0.0;      // integral-in-time norm with weight |k|^4 (quadrature value)
    double z4_tail = 0.0; // its beyond-grid envelope estimate
    double triple = 0.0;  // st_pm2 + z4 exactly
    std::optional<double> ck;  // weighted time-sup seminorm, if requested
    double ck_exponent = 0.0;
};

// sup over modes of euclid_norm(k)^a * |v^(k)|; 0 for the zero field.
// Throws for a < 0.
double pm_norm(const SpectralField& f, double a);

// max over grid nodes of pm_norm(node, b).
double st_pm_norm(const Trajectory& traj, double b);

// sup over k of the time quadrature of |k|^c |v^(t,k)| over [0, t_M], per-k:
//   trapezoid    - plain trapezoid rule on the node values
//   exact_kernel - per-interval exponential fit: on [t_j, t_j+1] with node
//                  values m_j, m_j+1 both positive, integrate the unique
//                  exponential through the endpoints,
//                      h * (m_j+1 - m_j) / log(m_j+1 / m_j),
//                  which is exact whenever the signal decays like
//                  A e^{-r (t - t_j)} on the interval (heat-kernel envelopes)
//                  and always lies between the min and max endpoint rules;
//                  falls back to trapezoid when an endpoint is 0 or the
//                  endpoints are equal.
// The tail field estimates the remainder beyond t_M under the envelope
// |v^(t,k)| <= |v^(t_M,k)| e^{-mu (t - t_M) |k|^2}: per-k tail
// = |k|^c |v^(t_M,k)| / (mu |k|^2).  It is reported separately and never
// added to the value.
ZNormResult z_norm(const Trajectory& traj, double c, QuadRule rule, double mu);

// st_pm_norm(traj, 2) + z_norm(traj, 4).value with the exact-kernel rule.
double triple_norm(const Trajectory& traj, double mu);

// max over positive nodes of t^(a/2 - 1) * pm_norm(node, a); a in (2,3).
double ck_seminorm(const Trajectory& traj, double a);

NormReport make_norm_report(const Trajectory& traj, double mu, QuadRule rule,
                            std::optional<double> ck_exponent = std::nullopt);

}  // namespace pmns
