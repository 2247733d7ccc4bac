#pragma once

#include <array>
#include <vector>

#include "mateq/scalar_poly.hpp"

namespace mateq {

/// Hard ceiling on the degree of a matrix equation.
inline constexpr int kMaxDegree = 16;

struct Vec2 {
    std::array<Complex, 2> c{};

    Complex& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    Complex operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    double norm() const;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Unit norm, with the first nonzero component rotated to the positive real axis.
Vec2 normalized(const Vec2& v);

/// det[u v] for column vectors u, v.
Complex cross(const Vec2& u, const Vec2& v);

/// 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<Complex, 4> e{};

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return scalar(1.0); }
    static Mat2 scalar(Complex s) { return diag(s, s); }
    static Mat2 diag(Complex a, Complex b) { return {{a, 0.0, 0.0, b}}; }
    static Mat2 from_columns(const Vec2& c0, const Vec2& c1) { return {{c0[0], c1[0], c0[1], c1[1]}}; }

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
    Complex operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

    Vec2 column(int c) const { return {{(*this)(0, c), (*this)(1, c)}}; }
    Vec2 row(int r) const { return {{(*this)(r, 0), (*this)(r, 1)}}; }

    Complex trace() const { return e[0] + e[3]; }
    Complex det() const { return e[0] * e[3] - e[1] * e[2]; }
    /// Largest entry magnitude.
    double max_norm() const;

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 operator+(Mat2 a, const Mat2& b);
Mat2 operator-(Mat2 a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, Mat2 a);
Vec2 operator*(const Mat2& a, const Vec2& v);

/// Throws SingularSystem for an exactly singular matrix.
Mat2 inverse(const Mat2& a);

/// t^2 - tr(X) t + det(X).
Poly char_poly(const Mat2& x);

struct Eigen2 {
    enum class Kind { distinct, scalar, defective };

    Kind kind = Kind::distinct;
    std::array<Complex, 2> values{};
    /// Eigenvectors for distinct and scalar kinds; for defective only vectors[0].
    std::array<Vec2, 2> vectors{};
};

/// Eigen-decomposition through the characteristic quadratic. Nearly equal
/// eigenvalues with aligned eigenvectors classify as defective.
Eigen2 eigen(const Mat2& x, double tol = 1e-6);

/// X^n + A_{n-1} X^{n-1} + ... + A_0 = 0 with coefficients A_0 first.
class MatrixEquation {
public:
    /// Throws DomainError unless 1 <= coeffs.size() <= kMaxDegree.
    explicit MatrixEquation(std::vector<Mat2> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<Mat2>& coeffs() const { return coeffs_; }
    const Mat2& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

    /// Largest entry magnitude over all coefficients.
    double max_coeff() const;

    friend bool operator==(const MatrixEquation&, const MatrixEquation&) = default;

private:
    std::vector<Mat2> coeffs_;
};

/// 2x2 matrix with polynomial entries.
struct PolyMat2 {
    std::array<Poly, 4> e{};

    Poly& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
    const Poly& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }
};

/// The corresponding polynomial matrix t^n I + sum A_i t^i.
PolyMat2 polymat_from_equation(const MatrixEquation& eq);
Mat2 polymat_eval(const PolyMat2& m, Complex t);
Poly polymat_det(const PolyMat2& m);
/// Entrywise derivative.
PolyMat2 polymat_derivative(const PolyMat2& m);

struct Nullspace {
    int rank = 2;
    std::vector<Vec2> basis;
};

/// Numerical rank and kernel basis. Rank 0 when every entry is within
/// tol*scale of zero; rank 1 when the smaller singular value is.
Nullspace rank_and_nullspace(const Mat2& a, double scale, double tol = 1e-8);

/// Unit kernel direction of a matrix treated as rank one, taken from the
/// complement of its dominant row.
Vec2 kernel_direction(const Mat2& a);

/// Residual f(X) with the left Horner association ((X + A_{n-1})X + ...)X + A_0.
Mat2 eval_equation(const MatrixEquation& eq, const Mat2& x);

}  // namespace mateq
