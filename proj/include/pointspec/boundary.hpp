#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pointspec/angles.hpp"
#include "pointspec/mat2.hpp"

namespace pointspec {

// Tolerances used throughout: structural predicates on *inputs* accept a
// defect up to 1e-10; everything this library *constructs* is good to 1e-12.
inline constexpr double input_tol = 1e-10;
inline constexpr double output_tol = 1e-12;

struct ConstraintViolated : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonpositiveScale : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotParityInvariant : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonpositiveMomentum : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One contact interaction: a unitary 2x2 matrix U together with the length
/// scale L0 that enters the matching condition
///
///     (U - I) Phi + i L0 (U + I) Phi' = 0.
///
/// U and L0 jointly define the physics, so they travel together.
class BoundaryMatrix {
public:
    BoundaryMatrix(const Mat2& u, double l0) : u_(u), l0_(l0) {
        if (!(l0 > 0.0)) throw NonpositiveScale("BoundaryMatrix: length scale must be positive");
        if (u.unitarity_defect() > input_tol)
            throw ConstraintViolated("BoundaryMatrix: matrix is not unitary");
    }

    const Mat2& matrix() const { return u_; }
    double length_scale() const { return l0_; }

private:
    Mat2 u_;
    double l0_;
};

/// Point on the parity-invariant torus, coordinates (theta_plus, theta_minus),
/// each kept in [0, 2*pi).  theta_plus governs the even sector, theta_minus
/// the odd one.
struct TorusPoint {
    double theta_plus = 0.0;
    double theta_minus = 0.0;

    TorusPoint() = default;
    TorusPoint(double tp, double tm)
        : theta_plus(canonical_angle(tp)), theta_minus(canonical_angle(tm)) {}
};

inline bool same_torus_point(const TorusPoint& a, const TorusPoint& b, double tol = 1e-12) {
    return angles_equal(a.theta_plus, b.theta_plus, tol) &&
           angles_equal(a.theta_minus, b.theta_minus, tol);
}

/// The (xi, alpha, beta) parametrization of U(2):
///   U = e^{i xi} [[aR + i aI, bR + i bI], [-bR + i bI, aR - i aI]]
/// with aR^2 + aI^2 + bR^2 + bI^2 = 1 and xi in [0, pi).
struct CharacteristicParams {
    double xi = 0.0;
    double alpha_r = 1.0;
    double alpha_i = 0.0;
    double beta_r = 0.0;
    double beta_i = 0.0;

    double norm_defect() const {
        return std::fabs(alpha_r * alpha_r + alpha_i * alpha_i + beta_r * beta_r +
                         beta_i * beta_i - 1.0);
    }
};

/// Boundary values of a wave function at the two sides of the puncture:
///   phi       = (f(0+),  f(0-))
///   phi_prime = (f'(0+), -f'(0-))
struct BoundaryData {
    Vec2 phi;
    Vec2 phi_prime;
};

/// Sector coupling strengths g+ = tan(theta_plus/2), g- = cot(theta_minus/2).
/// Values are extended reals: the tangent/cotangent poles are represented as
/// +infinity, never as errors, so strong-coupling identities stay testable.
struct CouplingPair {
    double g_plus = 0.0;
    double g_minus = 0.0;
};

/// One-point scattering amplitudes at momentum k.  The matrix
/// [[r_left, t_right], [t_left, r_right]] is unitary for any unitary U.
struct SMatrix {
    double k = 0.0;
    Complex r_left, t_left, r_right, t_right;

    double unitarity_defect() const {
        Mat2 s{{r_left, t_right, t_left, r_right}};
        return s.unitarity_defect();
    }
};

enum class InteractionClass { Free, DeltaLine, EpsilonLine, SelfDual, FreePointDual, Generic };

enum class TransformKind { Parity, HalfReflection, Q };

enum class Sector { Plus, Minus };

/// Build U from the characteristic parametrization.
inline BoundaryMatrix u_from_params(const CharacteristicParams& p, double l0) {
    if (!(l0 > 0.0)) throw NonpositiveScale("u_from_params: length scale must be positive");
    if (p.norm_defect() > input_tol)
        throw ConstraintViolated("u_from_params: alpha/beta parameters are not normalized");
    const Complex phase = std::polar(1.0, p.xi);
    const Complex alpha{p.alpha_r, p.alpha_i};
    const Complex beta{p.beta_r, p.beta_i};
    Mat2 u{{alpha, beta, -std::conj(beta), std::conj(alpha)}};
    return BoundaryMatrix(phase * u, l0);
}

/// Build the torus matrix U = e^{i theta_plus} P+ + e^{i theta_minus} P- with
/// P+- = (I +- sigma1)/2.  The result satisfies sigma1 U sigma1 = U exactly
/// (equal diagonal entries, equal off-diagonal entries).
inline BoundaryMatrix u_from_torus(const TorusPoint& t, double l0) {
    const Complex ep = std::polar(1.0, t.theta_plus);
    const Complex em = std::polar(1.0, t.theta_minus);
    const Complex d = 0.5 * (ep + em);
    const Complex o = 0.5 * (ep - em);
    return BoundaryMatrix(Mat2{{d, o, o, d}}, l0);
}

inline bool is_parity_invariant(const BoundaryMatrix& u, double tol = input_tol) {
    const Mat2 s1 = Mat2::pauli(1);
    return (s1 * u.matrix() * s1 - u.matrix()).max_abs() <= tol;
}

/// Recover (theta_plus, theta_minus) from a parity-invariant U as the phases
/// of U on the fixed eigenvectors (1,1)/sqrt2 and (1,-1)/sqrt2.  This is
/// branch-free and works on the whole torus, unlike arctan-based recovery.
inline TorusPoint torus_from_u(const BoundaryMatrix& u) {
    if (!is_parity_invariant(u)) throw NotParityInvariant("torus_from_u: sigma1 U sigma1 != U");
    const Mat2& m = u.matrix();
    // Eigenvalues on (1,1) and (1,-1); averaging the two rows suppresses the
    // residual asymmetry allowed by the input tolerance.
    const Complex lp = 0.5 * (m(0, 0) + m(0, 1) + m(1, 0) + m(1, 1));
    const Complex lm = 0.5 * (m(0, 0) - m(0, 1) - m(1, 0) + m(1, 1));
    return TorusPoint(canonical_angle(std::arg(lp)), canonical_angle(std::arg(lm)));
}

/// Conjugate U by the Pauli matrix implementing the chosen symmetry action:
/// sigma1 (parity), sigma3 (half-reflection), sigma2 (their product Q).
inline BoundaryMatrix transform(const BoundaryMatrix& u, TransformKind which) {
    int a = 1;
    if (which == TransformKind::HalfReflection) a = 3;
    if (which == TransformKind::Q) a = 2;
    const Mat2 s = Mat2::pauli(a);
    return BoundaryMatrix(s * u.matrix() * s, u.length_scale());
}

namespace detail {

// tan(theta/2) with an exact +infinity at the pole theta = pi.
inline double half_angle_tan(double theta) {
    const double t = canonical_angle(theta);
    if (angle_distance(t, pi) <= 1e-12) return std::numeric_limits<double>::infinity();
    return std::tan(0.5 * t);
}

// cot(theta/2) with an exact +infinity at the pole theta = 0.
inline double half_angle_cot(double theta) {
    const double t = canonical_angle(theta);
    if (angle_distance(t, 0.0) <= 1e-12) return std::numeric_limits<double>::infinity();
    return 1.0 / std::tan(0.5 * t);
}

}  // namespace detail

inline CouplingPair coupling_strengths(const TorusPoint& t) {
    return {detail::half_angle_tan(t.theta_plus), detail::half_angle_cot(t.theta_minus)};
}

/// Shift theta_plus (Plus) or theta_minus (Minus) by pi; acts on the sector
/// coupling as g -> -1/g.
inline TorusPoint inversion(const TorusPoint& t, Sector sector) {
    if (sector == Sector::Plus) return TorusPoint(t.theta_plus + pi, t.theta_minus);
    return TorusPoint(t.theta_plus, t.theta_minus + pi);
}

/// Classify a torus point.  Overlapping categories resolve by precedence
/// Free > FreePointDual > SelfDual > DeltaLine > EpsilonLine > Generic.
inline InteractionClass classify(const TorusPoint& t, double tol = 1e-12) {
    const bool plus_zero = angles_equal(t.theta_plus, 0.0, tol);
    const bool minus_pi = angles_equal(t.theta_minus, pi, tol);
    if (plus_zero && minus_pi) return InteractionClass::Free;
    if (angles_equal(t.theta_plus, pi, tol) && angles_equal(t.theta_minus, 0.0, tol))
        return InteractionClass::FreePointDual;
    if (angles_equal(t.theta_plus, t.theta_minus, tol)) return InteractionClass::SelfDual;
    if (minus_pi) return InteractionClass::DeltaLine;
    if (plus_zero) return InteractionClass::EpsilonLine;
    return InteractionClass::Generic;
}

/// Residual of the matching condition, (U - I) Phi + i L0 (U + I) Phi'.
/// Zero exactly when the data lies in the domain selected by U.
inline Vec2 boundary_residual(const BoundaryMatrix& u, const BoundaryData& d) {
    const Mat2 I = Mat2::identity();
    const Vec2 first = (u.matrix() - I) * d.phi;
    const Vec2 second = (u.matrix() + I) * d.phi_prime;
    return first + Complex{0.0, u.length_scale()} * second;
}

/// |Phi'^dag Phi - Phi^dag Phi'|: the probability-current jump across the
/// puncture.  Vanishes for every admissible boundary datum.
inline double current_mismatch(const BoundaryData& d) {
    return std::abs(dot(d.phi_prime, d.phi) - dot(d.phi, d.phi_prime));
}

/// Scattering amplitudes at momentum k > 0, from plane-wave data closed with
/// the matching condition.  With W-+ = (U - I) -+ k L0 (U + I), left and right
/// incidence reduce to the single linear problem  W- X = -W+, whose columns
/// hold (r_right, t_right) and (t_left, r_left).
inline SMatrix s_matrix(const BoundaryMatrix& u, double k) {
    if (!(k > 0.0)) throw NonpositiveMomentum("s_matrix: momentum must be positive");
    const Mat2 I = Mat2::identity();
    const double q = k * u.length_scale();
    const Mat2 um = u.matrix() - I;
    const Mat2 up = u.matrix() + I;
    const Mat2 wm = um - Complex{q, 0.0} * up;
    const Mat2 wp = um + Complex{q, 0.0} * up;

    const Complex det = wm.det();
    // |det W-| = 4 * prod_i hypot(sin(theta_i/2), q cos(theta_i/2)); it cannot
    // vanish for unitary U and k > 0, but keep the guard.
    if (std::abs(det) <= 1e-14 * std::max(1.0, wm.max_abs() * wm.max_abs()))
        throw SingularSystem("s_matrix: matching system is singular at this momentum");

    const Mat2 wm_inv = Mat2{{wm(1, 1), -wm(0, 1), -wm(1, 0), wm(0, 0)}} * (1.0 / det);
    const Mat2 x = Complex{-1.0, 0.0} * (wm_inv * wp);

    SMatrix s;
    s.k = k;
    s.r_right = x(0, 0);
    s.t_right = x(1, 0);
    s.t_left = x(0, 1);
    s.r_left = x(1, 1);
    return s;
}

inline const char* to_string(InteractionClass c) {
    switch (c) {
        case InteractionClass::Free: return "free";
        case InteractionClass::DeltaLine: return "delta-line";
        case InteractionClass::EpsilonLine: return "epsilon-line";
        case InteractionClass::SelfDual: return "self-dual";
        case InteractionClass::FreePointDual: return "free-point-dual";
        default: return "generic";
    }
}

}  // namespace pointspec
