#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pointspec/boundary.hpp"

namespace pointspec {

// ---------------------------------------------------------------------------
// Spectrum of a contact interaction confined to the symmetric Dirichlet box
// [-L, L].
//
// The whole solver rests on one reduction.  Any eigenfunction with E = k^2
// vanishing at the walls is, on each half separately,
//
//     f(x) = A sin(k(L - x))   (x > 0),      f(x) = B sin(k(L + x))   (x < 0),
//
// which gives boundary vectors proportional to the *same* amplitude vector
// v = (A, B):
//
//     Phi = sin(kL) v,         Phi' = -k cos(kL) v.
//
// The matching condition (U - I) Phi + i L0 (U + I) Phi' = 0 therefore turns
// into a 2x2 null-space problem
//
//     [ (U - I) sin(kL) - i k L0 cos(kL) (U + I) ] v = 0,
//
// whose determinant factorizes over the eigenphases e^{i theta} of U:
//
//     det = -4 e^{i(theta1 + theta2)/2} F(theta1, k) F(theta2, k),
//     F(theta, k) = sin(theta/2) sin(kL) - k L0 cos(theta/2) cos(kL).
//
// So the box spectrum of an arbitrary unitary U is the union of the root sets
// of the scalar secular function F at the two eigenphases of U.  F is the
// pole-free equivalent of  k L0 cot(kL) = tan(theta/2)  and is continuous in
// both arguments, which makes every root bracketable by sign changes.  For a
// parity-invariant U the eigenphases are (theta_plus, theta_minus) on the
// fixed vectors (1, +-1), and the two root families carry even/odd parity.
//
// Negative energies E = -kappa^2 come from the same function continued to
// imaginary momentum:  sin -> i sinh, cos -> cosh,
//
//     G(kappa) = sin(theta/2) sinh(kappa L) - kappa L0 cos(theta/2) cosh(kappa L),
//
// with a single root iff tan(theta/2) > L0/L and a zero-energy level exactly
// at threshold.  Momenta are reported with hbar^2/2m = 1, i.e. E = k^2.
// ---------------------------------------------------------------------------

struct LevelMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dirichlet box with walls at +-half_width.
struct BoxSpec {
    double half_width = 1.0;

    explicit BoxSpec(double l) : half_width(l) {
        if (!(l > 0.0)) throw NonpositiveScale("BoxSpec: half width must be positive");
    }
};

enum class Parity { Even, Odd, Unlabeled };
enum class Branch { Positive, Zero, Negative };

struct Level {
    int index = 0;
    Parity parity = Parity::Unlabeled;
    Branch branch = Branch::Positive;
    double k = 0.0;      // momentum, Positive branch
    double kappa = 0.0;  // decay constant, Negative branch
    double energy = 0.0;

    double k_or_kappa() const { return branch == Branch::Negative ? kappa : k; }
};

struct Spectrum {
    std::vector<Level> levels;
    BoxSpec box;
    BoundaryMatrix u;
    std::optional<TorusPoint> torus;  // set when u is parity invariant

    Spectrum(BoxSpec b, BoundaryMatrix m) : box(b), u(std::move(m)) {}
};

/// Pole-free sector secular function
///   F(theta, k) = sin(theta/2) sin(kL) - k L0 cos(theta/2) cos(kL).
inline double sector_value(double theta, double k, double half_width, double l0) {
    const double half = 0.5 * canonical_angle(theta);
    return std::sin(half) * std::sin(k * half_width) -
           k * l0 * std::cos(half) * std::cos(k * half_width);
}

/// Eigenvalue phases of U in [0, 2*pi).  For a parity-invariant matrix the
/// result is (theta_plus, theta_minus) in that order; otherwise the pair is
/// sorted ascending.
inline std::array<double, 2> eigenphases(const BoundaryMatrix& u) {
    if (is_parity_invariant(u)) {
        const TorusPoint t = torus_from_u(u);
        return {t.theta_plus, t.theta_minus};
    }
    const Complex half_tr = 0.5 * u.matrix().trace();
    const Complex det = u.matrix().det();
    Complex l1 = half_tr + std::sqrt(half_tr * half_tr - det);
    if (std::abs(l1) < 0.5) l1 = half_tr - std::sqrt(half_tr * half_tr - det);
    const Complex l2 = det / l1;  // avoids cancellation in the smaller root
    double p1 = canonical_angle(std::arg(l1));
    double p2 = canonical_angle(std::arg(l2));
    if (p1 > p2) std::swap(p1, p2);
    return {p1, p2};
}

namespace detail {

// Bisection on [a, b] down to floating-point exhaustion.  sign_a is the sign
// of f just inside the left end and must differ from the sign at b.
template <typename F>
double bisect(F&& f, double a, double b, int sign_a) {
    while (true) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) return m;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0 ? 1 : -1) == sign_a)
            a = m;
        else
            b = m;
    }
}

inline int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace detail

/// The `count` smallest positive roots of the sector secular function, in
/// increasing order.  One root per momentum branch kL in (n pi, (n+1) pi];
/// the branch below pi is occupied only while tan(theta/2) < L0/L.
inline std::vector<double> sector_roots(double theta, const BoxSpec& box, double l0, int count) {
    if (count < 1) throw std::invalid_argument("sector_roots: count must be >= 1");
    const double th = canonical_angle(theta);
    const double s = std::sin(0.5 * th);
    const double c = std::cos(0.5 * th);
    const double L = box.half_width;

    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(count));

    // Dirichlet sector: cos(theta/2) is zero to machine precision only at
    // theta = pi, where the roots are exactly kL = n pi (the true correction
    // is below one ulp of kL).
    if (std::fabs(c) <= 1e-14) {
        for (int n = 1; n <= count; ++n) roots.push_back(static_cast<double>(n) * pi / L);
        return roots;
    }

    const auto f = [&](double k) {
        return s * std::sin(k * L) - k * l0 * c * std::cos(k * L);
    };
    // Sign of F at the branch endpoint kL = n pi is exactly -sign(c) (-1)^n;
    // using the formula instead of an evaluation keeps the bracket valid when
    // the endpoint value is at round-off level.
    const auto end_sign = [&](int n) { return (n % 2 == 0) ? -detail::sign_of(c) : detail::sign_of(c); };

    // Branch below pi: F(k)/k -> sL - L0 c as k -> 0+, and k = 0 itself is
    // always a trivial zero, so the sign proxy at the left end is analytic.
    const int sign0 = detail::sign_of(s * L - l0 * c);
    if (sign0 != 0 && sign0 != end_sign(1))
        roots.push_back(detail::bisect(f, 0.0, pi / L, sign0));

    for (int n = 1; static_cast<int>(roots.size()) < count; ++n) {
        roots.push_back(detail::bisect(f, static_cast<double>(n) * pi / L,
                                       static_cast<double>(n + 1) * pi / L, end_sign(n)));
    }
    return roots;
}

struct ThresholdRoot {
    enum class Kind { Absent, ZeroEnergy, Bound } kind = Kind::Absent;
    double kappa = 0.0;
};

/// Negative-energy root of the sector equation: the unique kappa > 0 with
/// kappa L0 coth(kappa L) = tan(theta/2), present iff tan(theta/2) > L0/L.
/// Exactly at threshold the sector holds a zero-energy level instead.
/// Computed from the overflow-safe form  sin(theta/2) tanh(kappa L) = kappa L0 cos(theta/2).
inline ThresholdRoot negative_root(double theta, const BoxSpec& box, double l0) {
    const double th = canonical_angle(theta);
    const double s = std::sin(0.5 * th);
    const double c = std::cos(0.5 * th);
    const double L = box.half_width;

    if (!(c > 0.0)) return {};  // theta >= pi: no dive below E = 0 in this sector
    const double tan_half = s / c;
    if (std::fabs(tan_half - l0 / L) <= 1e-12)
        return {ThresholdRoot::Kind::ZeroEnergy, 0.0};
    if (tan_half < l0 / L) return {};

    const auto h = [&](double kappa) { return s * std::tanh(kappa * L) - kappa * l0 * c; };
    const double hi = tan_half / l0 + 1.0 / L;  // h(hi) < 0 by construction
    const double kappa = detail::bisect(h, 0.0, hi, +1);
    return {ThresholdRoot::Kind::Bound, kappa};
}

/// All levels of a single sector (negative, zero and positive branches),
/// lowest `count` of them, energies ascending.
inline std::vector<Level> sector_levels(double theta, const BoxSpec& box, double l0, int count,
                                        Parity parity) {
    std::vector<Level> out;
    out.reserve(static_cast<std::size_t>(count));
    const ThresholdRoot tr = negative_root(theta, box, l0);
    if (tr.kind == ThresholdRoot::Kind::Bound) {
        Level l;
        l.parity = parity;
        l.branch = Branch::Negative;
        l.kappa = tr.kappa;
        l.energy = -tr.kappa * tr.kappa;
        out.push_back(l);
    } else if (tr.kind == ThresholdRoot::Kind::ZeroEnergy) {
        Level l;
        l.parity = parity;
        l.branch = Branch::Zero;
        out.push_back(l);
    }
    if (static_cast<int>(out.size()) < count) {
        const auto ks = sector_roots(theta, box, l0, count - static_cast<int>(out.size()));
        for (double k : ks) {
            Level l;
            l.parity = parity;
            l.branch = Branch::Positive;
            l.k = k;
            l.energy = k * k;
            out.push_back(l);
        }
    }
    return out;
}

namespace detail {

inline int parity_rank(Parity p) {
    return p == Parity::Even ? 0 : (p == Parity::Odd ? 1 : 2);
}

inline bool nearly_degenerate(double ea, double eb) {
    return std::fabs(ea - eb) <= 1e-11 * std::max({1.0, std::fabs(ea), std::fabs(eb)});
}

}  // namespace detail

/// Full box spectrum: merge of the two sector root families over the
/// eigenphases of U, sorted by energy, lowest num_levels levels.  Parity
/// labels are assigned only when U is parity invariant; degenerate pairs are
/// listed even before odd.
inline Spectrum spectrum(const BoundaryMatrix& u, const BoxSpec& box, int num_levels) {
    if (num_levels < 1) throw std::invalid_argument("spectrum: num_levels must be >= 1");
    Spectrum result(box, u);

    std::vector<Level> merged;
    if (is_parity_invariant(u)) {
        const TorusPoint t = torus_from_u(u);
        result.torus = t;
        merged = sector_levels(t.theta_plus, box, u.length_scale(), num_levels, Parity::Even);
        const auto odd =
            sector_levels(t.theta_minus, box, u.length_scale(), num_levels, Parity::Odd);
        merged.insert(merged.end(), odd.begin(), odd.end());
    } else {
        const auto phases = eigenphases(u);
        for (double th : phases) {
            const auto part = sector_levels(th, box, u.length_scale(), num_levels, Parity::Unlabeled);
            merged.insert(merged.end(), part.begin(), part.end());
        }
    }

    std::sort(merged.begin(), merged.end(), [](const Level& a, const Level& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return detail::parity_rank(a.parity) < detail::parity_rank(b.parity);
    });
    // Keep degenerate pairs adjacent in even-before-odd order.
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        if (detail::nearly_degenerate(merged[i].energy, merged[i + 1].energy) &&
            detail::parity_rank(merged[i].parity) > detail::parity_rank(merged[i + 1].parity))
            std::swap(merged[i], merged[i + 1]);
    }

    merged.resize(std::min<std::size_t>(merged.size(), static_cast<std::size_t>(num_levels)));
    for (std::size_t i = 0; i < merged.size(); ++i) merged[i].index = static_cast<int>(i);
    result.levels = std::move(merged);
    return result;
}

/// Momentum branch index of a positive-branch level: n for kL in (n pi,
/// (n+1) pi], snapping boundary roots downward.  Zero and negative levels sit
/// below every branch and report -1.
inline int branch_index(const Level& l, const BoxSpec& box) {
    if (l.branch != Branch::Positive) return -1;
    const double x = l.k * box.half_width / pi;
    return static_cast<int>(std::ceil(x - 1e-9)) - 1;
}

namespace detail {

// The scaled 2x2 matching matrix whose null vector carries the half-box
// amplitudes (A, B); the scaling keeps entries bounded on the negative branch.
inline Mat2 matching_matrix(const BoundaryMatrix& u, const Level& level, const BoxSpec& box) {
    const Mat2 I = Mat2::identity();
    const Mat2 um = u.matrix() - I;
    const Mat2 up = u.matrix() + I;
    const double L = box.half_width;
    const double l0 = u.length_scale();
    switch (level.branch) {
        case Branch::Positive:
            return Complex{std::sin(level.k * L), 0.0} * um +
                   Complex{0.0, -level.k * l0 * std::cos(level.k * L)} * up;
        case Branch::Negative:
            return Complex{std::tanh(level.kappa * L), 0.0} * um +
                   Complex{0.0, -level.kappa * l0} * up;
        default:
            return Complex{L, 0.0} * um + Complex{0.0, -l0} * up;
    }
}

// Entry-magnitude bound for a generically non-singular matching matrix at the
// same (k, kappa); reference scale for the singularity test.
inline double matching_scale(const BoundaryMatrix& u, const Level& level, const BoxSpec& box) {
    const Mat2 I = Mat2::identity();
    const double um = (u.matrix() - I).max_abs();
    const double up = (u.matrix() + I).max_abs();
    const double l0 = u.length_scale();
    switch (level.branch) {
        case Branch::Positive: return um + level.k * l0 * up;
        case Branch::Negative: return um + level.kappa * l0 * up;
        default: return box.half_width * um + l0 * up;
    }
}

// Null vector of the (numerically singular) matching matrix, unit euclidean
// norm.  Throws when the level does not actually solve the secular condition.
inline Vec2 amplitude_vector(const BoundaryMatrix& u, const Level& level, const BoxSpec& box) {
    const Mat2 m = matching_matrix(u, level, box);
    const double scale = matching_scale(u, level, box);
    const double top = m.max_abs();
    constexpr double rel_tol = 1e-8;

    Vec2 v;
    if (top <= rel_tol * scale) {
        // Both sectors solve at this momentum (degenerate level): the whole
        // plane is null, so pick the vector dictated by the parity label.
        v = level.parity == Parity::Odd ? Vec2{{1.0, 0.0}, {-1.0, 0.0}} : Vec2{{1.0, 0.0}, {1.0, 0.0}};
    } else {
        const double r0 = std::abs(m(0, 0)) + std::abs(m(0, 1));
        const double r1 = std::abs(m(1, 0)) + std::abs(m(1, 1));
        v = r0 >= r1 ? Vec2{m(0, 1), -m(0, 0)} : Vec2{m(1, 1), -m(1, 0)};
        if ((m * v).max_abs() > rel_tol * scale * v.norm())
            throw LevelMismatch("wavefunction: level does not solve the secular condition");
    }
    return v * Complex{1.0 / v.norm(), 0.0};
}

// Integral over one half-box of the squared profile function.
inline double half_norm_integral(const Level& level, const BoxSpec& box) {
    const double L = box.half_width;
    switch (level.branch) {
        case Branch::Positive:
            return 0.5 * L - std::sin(2.0 * level.k * L) / (4.0 * level.k);
        case Branch::Negative:
            return std::sinh(2.0 * level.kappa * L) / (4.0 * level.kappa) - 0.5 * L;
        default:
            return L * L * L / 3.0;
    }
}

inline Complex profile(const Level& level, double y) {
    switch (level.branch) {
        case Branch::Positive: return {std::sin(level.k * y), 0.0};
        case Branch::Negative: return {std::sinh(level.kappa * y), 0.0};
        default: return {y, 0.0};
    }
}

}  // namespace detail

/// Boundary values induced by the (unit-normalized) eigenfunction of a level.
inline BoundaryData boundary_data_for(const BoundaryMatrix& u, const Level& level,
                                      const BoxSpec& box) {
    Vec2 v = detail::amplitude_vector(u, level, box);
    v = v * Complex{1.0 / std::sqrt(detail::half_norm_integral(level, box)), 0.0};
    const double L = box.half_width;
    double w = 0.0, q = 0.0;
    switch (level.branch) {
        case Branch::Positive:
            w = std::sin(level.k * L);
            q = level.k * std::cos(level.k * L);
            break;
        case Branch::Negative:
            w = std::sinh(level.kappa * L);
            q = level.kappa * std::cosh(level.kappa * L);
            break;
        default:
            w = L;
            q = 1.0;
            break;
    }
    return {v * Complex{w, 0.0}, v * Complex{-q, 0.0}};
}

/// Samples of the unit-L2-norm eigenfunction at the requested abscissae
/// (all inside the box and away from the puncture at x = 0).
inline std::vector<Complex> wavefunction(const BoundaryMatrix& u, const Level& level,
                                         const BoxSpec& box, const std::vector<double>& xs) {
    const double L = box.half_width;
    for (double x : xs) {
        if (x == 0.0 || std::fabs(x) > L)
            throw std::invalid_argument("wavefunction: sample points must lie in [-L, L] minus 0");
    }
    Vec2 v = detail::amplitude_vector(u, level, box);
    v = v * Complex{1.0 / std::sqrt(detail::half_norm_integral(level, box)), 0.0};

    std::vector<Complex> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (x > 0.0)
            out.push_back(v.a * detail::profile(level, L - x));
        else
            out.push_back(v.b * detail::profile(level, L + x));
    }
    return out;
}

inline const char* to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "E";
        case Parity::Odd: return "O";
        default: return "U";
    }
}

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::Positive: return "positive";
        case Branch::Zero: return "zero";
        default: return "negative";
    }
}

}  // namespace pointspec
