#pragma once
// Stable closed-form primitives for integrating a piecewise-linear signal
// against the decaying exponential kernel e^{-r (t - s)}.
//
// On one interval [s0, s1] with h = s1 - s0, z = r h and W linear between
// node values W0, W1:
//
//   integral_{s0}^{s1} e^{-r (s1 - s)} W(s) ds
//       = h * [ W1 * w0(z) - (W1 - W0) * w1(z) ]
//
// where w0(z) = (1 - e^{-z}) / z and w1(z) = (1 - (1+z) e^{-z}) / z^2.
// Both w0 and w1 cancel catastrophically as z -> 0, so below a threshold the
// code switches to 4-term Taylor expansions; elsewhere expm1-based forms are
// used.  Everything is bounded by 1, so no overflow for any r, h >= 0.

#include <cmath>

namespace pmns {

inline constexpr double kSmallZ = 1e-6;  // series/closed-form switch point

inline double kern_w0(double z) {
    if (z < kSmallZ) return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0;
    return -std::expm1(-z) / z;
}

inline double kern_w1(double z) {
    if (z < kSmallZ) return 0.5 - z / 3.0 + z * z / 8.0 - z * z * z / 30.0;
    return (-std::expm1(-z) - z * std::exp(-z)) / (z * z);
}

}  // namespace pmns
