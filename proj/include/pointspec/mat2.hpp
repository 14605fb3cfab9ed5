#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace pointspec {

using Complex = std::complex<double>;

/// A complex 2-vector, used for boundary values and eigenvector work.
struct Vec2 {
    Complex a{0.0, 0.0};
    Complex b{0.0, 0.0};

    Vec2 operator+(const Vec2& o) const { return {a + o.a, b + o.b}; }
    Vec2 operator-(const Vec2& o) const { return {a - o.a, b - o.b}; }
    Vec2 operator*(Complex s) const { return {a * s, b * s}; }

    double norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }
    double max_abs() const { return std::max(std::abs(a), std::abs(b)); }
};

inline Vec2 operator*(Complex s, const Vec2& v) { return v * s; }

/// Hermitian inner product <u, v> = conj(u)._dot_(v).
inline Complex dot(const Vec2& u, const Vec2& v) {
    return std::conj(u.a) * v.a + std::conj(u.b) * v.b;
}

/// A complex 2x2 matrix, row-major.  Small enough that everything is by
/// value; all arithmetic is exact complex arithmetic on the four entries.
struct Mat2 {
    std::array<Complex, 4> e{Complex{0, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0, 0}};

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

    static Mat2 identity() { return {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}}}; }

    // Pauli matrices, indexed 1..3.
    static Mat2 pauli(int a) {
        switch (a) {
            case 1: return {{Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}}};
            case 2: return {{Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}}};
            default: return {{Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{-1, 0}}};
        }
    }

    Mat2 operator+(const Mat2& o) const {
        return {{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]}};
    }
    Mat2 operator-(const Mat2& o) const {
        return {{e[0] - o.e[0], e[1] - o.e[1], e[2] - o.e[2], e[3] - o.e[3]}};
    }
    Mat2 operator*(const Mat2& o) const {
        return {{e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
                 e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]}};
    }
    Mat2 operator*(Complex s) const { return {{e[0] * s, e[1] * s, e[2] * s, e[3] * s}}; }

    Vec2 operator*(const Vec2& v) const {
        return {e[0] * v.a + e[1] * v.b, e[2] * v.a + e[3] * v.b};
    }

    Mat2 adjoint() const {
        return {{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}};
    }

    Complex trace() const { return e[0] + e[3]; }
    Complex det() const { return e[0] * e[3] - e[1] * e[2]; }

    /// Max-entry norm.
    double max_abs() const {
        return std::max(std::max(std::abs(e[0]), std::abs(e[1])),
                        std::max(std::abs(e[2]), std::abs(e[3])));
    }

    /// Max-entry norm of U'U - I; zero for a unitary matrix.
    double unitarity_defect() const { return (adjoint() * (*this) - identity()).max_abs(); }
};

inline Mat2 operator*(Complex s, const Mat2& m) { return m * s; }

}  // namespace pointspec
