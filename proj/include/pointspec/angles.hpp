#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pointspec {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Reduce an angle to the canonical range [0, 2*pi).
inline double canonical_angle(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;  // the += above can round up to exactly 2*pi
    return r;
}

// Shortest circular distance, in [0, pi].
inline double angle_distance(double a, double b) {
    const double d = std::fabs(canonical_angle(a) - canonical_angle(b));
    return std::min(d, two_pi - d);
}

inline bool angles_equal(double a, double b, double tol = 1e-12) {
    return angle_distance(a, b) <= tol;
}

}  // namespace pointspec
