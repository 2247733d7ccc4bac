#pragma once

#include <random>
#include <vector>

#include "mateq/matrix_core.hpp"

namespace mateq::fixtures {

inline Mat2 m2(Complex a, Complex b, Complex c, Complex d) { return {{a, b, c, d}}; }

inline MatrixEquation degree2(const Mat2& a0, const Mat2& a1 = Mat2::zero()) { return MatrixEquation({a0, a1}); }

/// X^2 - diag(1, 4) = 0, the n = 2 diagonal example with 4 solutions.
inline MatrixEquation four_solutions() { return degree2(Mat2::diag(-1.0, -4.0)); }

/// X + A_0 = 0 with A_0 = [[0, -1], [0, -1]].
inline MatrixEquation degree_one() { return MatrixEquation({m2(0.0, -1.0, 0.0, -1.0)}); }

inline MatrixEquation square_is_identity() { return degree2(-1.0 * Mat2::identity()); }
inline MatrixEquation square_is_zero() { return degree2(Mat2::zero()); }
/// X^2 = [[0, 1], [0, 0]]: no square root exists.
inline MatrixEquation square_is_nilpotent() { return degree2(m2(0.0, -1.0, 0.0, 0.0)); }
/// X^2 = [[1, 1], [0, 1]]: two Jordan-type square roots.
inline MatrixEquation square_is_jordan() { return degree2(m2(-1.0, -1.0, 0.0, -1.0)); }
/// (X - I)^2 = 0.
inline MatrixEquation shifted_square_zero() { return degree2(Mat2::identity(), -2.0 * Mat2::identity()); }

/// Entries with real and imaginary parts uniform in [-1, 1].
inline Mat2 random_matrix(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat2 x;
    for (auto& e : x.e) e = {u(rng), u(rng)};
    return x;
}

inline MatrixEquation random_equation(int n, std::mt19937_64& rng) {
    std::vector<Mat2> coeffs;
    for (int i = 0; i < n; ++i) coeffs.push_back(random_matrix(rng));
    return MatrixEquation(std::move(coeffs));
}

inline double distance(const Mat2& a, const Mat2& b) { return (a - b).max_norm(); }

inline bool contains(const std::vector<Mat2>& set, const Mat2& x, double tol) {
    for (const auto& y : set)
        if (distance(x, y) <= tol) return true;
    return false;
}

}  // namespace mateq::fixtures
