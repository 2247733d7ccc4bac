#include "mateq/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mateq/errors.hpp"

namespace mateq {

double Vec2::norm() const { return std::sqrt(std::norm(c[0]) + std::norm(c[1])); }

Vec2 normalized(const Vec2& v) {
    const double n = v.norm();
    if (n == 0.0) return v;
    Vec2 out{{v[0] / n, v[1] / n}};
    for (int i = 0; i < 2; ++i) {
        const double mag = std::abs(out[i]);
        if (mag > 1e-12) {
            const Complex phase = std::conj(out[i]) / mag;
            out[0] *= phase;
            out[1] *= phase;
            out[i] = mag;
            break;
        }
    }
    return out;
}

Complex cross(const Vec2& u, const Vec2& v) { return u[0] * v[1] - u[1] * v[0]; }

double Mat2::max_norm() const {
    double m = 0.0;
    for (const auto& x : e) m = std::max(m, std::abs(x));
    return m;
}

Mat2& Mat2::operator+=(const Mat2& o) {
    for (std::size_t i = 0; i < 4; ++i) e[i] += o.e[i];
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
    for (std::size_t i = 0; i < 4; ++i) e[i] -= o.e[i];
    return *this;
}

Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {{a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
             a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)}};
}

Mat2 operator*(Complex s, Mat2 a) {
    for (auto& x : a.e) x *= s;
    return a;
}

Vec2 operator*(const Mat2& a, const Vec2& v) {
    return {{a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]}};
}

Mat2 inverse(const Mat2& a) {
    const Complex d = a.det();
    if (d == Complex{}) throw SingularSystem("inverse: singular 2x2 matrix");
    return {{a(1, 1) / d, -a(0, 1) / d, -a(1, 0) / d, a(0, 0) / d}};
}

Poly char_poly(const Mat2& x) { return Poly{x.det(), -x.trace(), Complex{1.0}}; }

namespace {

// Kernel direction of a (numerically) rank-one matrix, from its dominant row.
Vec2 dominant_row_complement(const Mat2& a) {
    const Vec2 r0 = a.row(0);
    const Vec2 r1 = a.row(1);
    const Vec2& r = r0.norm() >= r1.norm() ? r0 : r1;
    return normalized(Vec2{{-r[1], r[0]}});
}

double smallest_singular_value(const Mat2& a) {
    double fro2 = 0.0;
    for (const auto& x : a.e) fro2 += std::norm(x);
    const double det = std::abs(a.det());
    const double disc = std::max(0.0, fro2 * fro2 - 4.0 * det * det);
    const double smax = std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
    return smax == 0.0 ? 0.0 : det / smax;
}

}  // namespace

Eigen2 eigen(const Mat2& x, double tol) {
    const double scale = std::max(1.0, x.max_norm());
    const Complex half = 0.5 * x.trace();
    Eigen2 out;
    if ((x - Mat2::scalar(half)).max_norm() <= tol * scale) {
        out.kind = Eigen2::Kind::scalar;
        out.values = {half, half};
        out.vectors = {Vec2{{1.0, 0.0}}, Vec2{{0.0, 1.0}}};
        return out;
    }
    const Complex root = std::sqrt(half * half - x.det());
    out.values = {half + root, half - root};
    out.vectors = {dominant_row_complement(x - Mat2::scalar(out.values[0])),
                   dominant_row_complement(x - Mat2::scalar(out.values[1]))};
    const bool close = std::abs(out.values[0] - out.values[1]) <= tol * scale;
    const bool aligned = std::abs(cross(out.vectors[0], out.vectors[1])) <= tol;
    if (close || aligned) {
        out.kind = Eigen2::Kind::defective;
        out.values = {half, half};
        out.vectors = {dominant_row_complement(x - Mat2::scalar(half)), Vec2{}};
    }
    return out;
}

MatrixEquation::MatrixEquation(std::vector<Mat2> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty() || static_cast<int>(coeffs_.size()) > kMaxDegree)
        throw DomainError("matrix equation degree must lie in [1, " + std::to_string(kMaxDegree) + "], got " +
                          std::to_string(coeffs_.size()));
    for (const auto& a : coeffs_)
        for (const auto& x : a.e)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
                throw DomainError("matrix equation has a non-finite coefficient");
}

double MatrixEquation::max_coeff() const {
    double m = 0.0;
    for (const auto& a : coeffs_) m = std::max(m, a.max_norm());
    return m;
}

PolyMat2 polymat_from_equation(const MatrixEquation& eq) {
    const int n = eq.degree();
    PolyMat2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            std::vector<Complex> coeffs(static_cast<std::size_t>(n) + 1, Complex{});
            for (int i = 0; i < n; ++i) coeffs[static_cast<std::size_t>(i)] = eq.coeff(i)(r, c);
            if (r == c) coeffs[static_cast<std::size_t>(n)] = 1.0;
            out(r, c) = Poly(std::move(coeffs));
        }
    return out;
}

Mat2 polymat_eval(const PolyMat2& m, Complex t) {
    Mat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.e[i] = m.e[i](t);
    return out;
}

Poly polymat_det(const PolyMat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

PolyMat2 polymat_derivative(const PolyMat2& m) {
    PolyMat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.e[i] = derivative(m.e[i]);
    return out;
}

Nullspace rank_and_nullspace(const Mat2& a, double scale, double tol) {
    const double threshold = tol * scale;
    if (a.max_norm() <= threshold) return {0, {Vec2{{1.0, 0.0}}, Vec2{{0.0, 1.0}}}};
    if (smallest_singular_value(a) <= threshold) return {1, {dominant_row_complement(a)}};
    return {2, {}};
}

Vec2 kernel_direction(const Mat2& a) { return dominant_row_complement(a); }

Mat2 eval_equation(const MatrixEquation& eq, const Mat2& x) {
    const int n = eq.degree();
    Mat2 acc = x + eq.coeff(n - 1);
    for (int i = n - 2; i >= 0; --i) acc = acc * x + eq.coeff(i);
    return acc;
}

}  // namespace mateq
