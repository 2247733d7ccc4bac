#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mateq/errors.hpp"
#include "mateq/matrix_core.hpp"

using namespace mateq;
using fixtures::m2;

namespace {

bool near_vec(const Vec2& a, const Vec2& b, double tol = 1e-12) {
    return std::abs(a[0] - b[0]) <= tol && std::abs(a[1] - b[1]) <= tol;
}

}  // namespace

TEST_SUITE("matrix_core") {

TEST_CASE("polymat_from_equation") {
    const auto one = polymat_from_equation(fixtures::degree_one());
    CHECK(one(0, 0) == Poly{0.0, 1.0});
    CHECK(one(0, 1) == Poly{-1.0});
    CHECK(one(1, 0).is_zero());
    CHECK(one(1, 1) == Poly{-1.0, 1.0});

    const auto four = polymat_from_equation(fixtures::four_solutions());
    CHECK(four(0, 0) == Poly{-1.0, 0.0, 1.0});
    CHECK(four(1, 1) == Poly{-4.0, 0.0, 1.0});
    CHECK(four(0, 1).is_zero());

    const auto sq = polymat_from_equation(fixtures::square_is_zero());
    CHECK(sq(0, 0) == Poly::monomial(2));
    CHECK(sq(1, 1) == Poly::monomial(2));
}

TEST_CASE("polymat_eval") {
    const auto four = polymat_from_equation(fixtures::four_solutions());
    CHECK(polymat_eval(four, 1.0) == Mat2::diag(0.0, -3.0));
    CHECK(polymat_eval(four, 0.0) == Mat2::diag(-1.0, -4.0));
    const auto one = polymat_from_equation(fixtures::degree_one());
    CHECK(polymat_eval(one, 1.0) == m2(1.0, -1.0, 0.0, 0.0));
}

TEST_CASE("polymat_det") {
    CHECK(polymat_det(polymat_from_equation(fixtures::four_solutions())) == Poly{4.0, 0.0, -5.0, 0.0, 1.0});
    CHECK(polymat_det(polymat_from_equation(fixtures::degree2(m2(0.0, -1.0, 0.0, 0.0)))) == Poly::monomial(4));
    CHECK(polymat_det(polymat_from_equation(fixtures::degree_one())) == Poly{0.0, -1.0, 1.0});
}

TEST_CASE("rank_and_nullspace") {
    const auto a = rank_and_nullspace(m2(0.0, -1.0, 0.0, 0.0), 1.0);
    CHECK(a.rank == 1);
    REQUIRE(a.basis.size() == 1);
    CHECK(near_vec(a.basis[0], Vec2{{1.0, 0.0}}));

    const auto z = rank_and_nullspace(Mat2::zero(), 1.0);
    CHECK(z.rank == 0);
    REQUIRE(z.basis.size() == 2);
    CHECK(near_vec(z.basis[0], Vec2{{1.0, 0.0}}));
    CHECK(near_vec(z.basis[1], Vec2{{0.0, 1.0}}));

    const auto d = rank_and_nullspace(Mat2::diag(0.0, -3.0), 4.0);
    CHECK(d.rank == 1);
    REQUIRE(d.basis.size() == 1);
    CHECK(near_vec(d.basis[0], Vec2{{1.0, 0.0}}));

    CHECK(rank_and_nullspace(Mat2::identity(), 1.0).rank == 2);
    CHECK(rank_and_nullspace(Mat2::identity(), 1.0).basis.empty());
}

TEST_CASE("kernel vectors are normalized and annihilated") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        // Rank one by construction: outer product of random vectors.
        const Mat2 r = fixtures::random_matrix(rng);
        const Mat2 a = m2(r(0, 0) * r(1, 0), r(0, 0) * r(1, 1), r(0, 1) * r(1, 0), r(0, 1) * r(1, 1));
        const double scale = std::max(1.0, a.max_norm());
        const auto ns = rank_and_nullspace(a, scale);
        REQUIRE(ns.rank == 1);
        const Vec2 v = ns.basis[0];
        CHECK(v.norm() == doctest::Approx(1.0));
        const Complex first = std::abs(v[0]) > 0.0 ? v[0] : v[1];
        CHECK(first.imag() == doctest::Approx(0.0));
        CHECK(first.real() > 0.0);
        const Vec2 av = a * v;
        CHECK(std::max(std::abs(av[0]), std::abs(av[1])) <= 10 * 1e-8 * scale);
    }
}

TEST_CASE("eval_equation") {
    CHECK(eval_equation(fixtures::degree_one(), m2(0.0, 1.0, 0.0, 1.0)).max_norm() == 0.0);
    CHECK(eval_equation(fixtures::square_is_zero(), m2(0.0, 2.5, 0.0, 0.0)).max_norm() == 0.0);
    CHECK(eval_equation(fixtures::four_solutions(), Mat2::diag(1.0, 2.0)).max_norm() == 0.0);
    CHECK(eval_equation(fixtures::four_solutions(), Mat2::identity()).max_norm() == doctest::Approx(3.0));
}

TEST_CASE("2x2 utilities") {
    const auto e = eigen(Mat2::diag(1.0, 2.0));
    CHECK(e.kind == Eigen2::Kind::distinct);
    const int one = std::abs(e.values[0] - 1.0) < 1e-12 ? 0 : 1;
    CHECK(std::abs(e.values[one] - 1.0) < 1e-12);
    CHECK(std::abs(e.values[1 - one] - 2.0) < 1e-12);
    CHECK(near_vec(e.vectors[one], Vec2{{1.0, 0.0}}));
    CHECK(near_vec(e.vectors[1 - one], Vec2{{0.0, 1.0}}));

    const auto j = eigen(m2(1.0, 1.0, 0.0, 1.0));
    CHECK(j.kind == Eigen2::Kind::defective);
    CHECK(std::abs(j.values[0] - 1.0) < 1e-12);

    CHECK(eigen(Mat2::scalar(3.0)).kind == Eigen2::Kind::scalar);

    const Mat2 n = m2(0.0, 1.0, 0.0, 0.0);
    CHECK(n.det() == Complex(0.0));
    CHECK(n.trace() == Complex(0.0));
    CHECK(char_poly(Mat2::diag(1.0, 2.0)) == Poly{2.0, -3.0, 1.0});
    CHECK((inverse(Mat2::diag(2.0, 4.0)) - Mat2::diag(0.5, 0.25)).max_norm() < 1e-15);
    CHECK_THROWS_AS(inverse(n), SingularSystem);
}

TEST_CASE("determinant is multiplicative") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat2 a = fixtures::random_matrix(rng);
        const Mat2 b = fixtures::random_matrix(rng);
        const Complex lhs = (a * b).det();
        const Complex rhs = a.det() * b.det();
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("det M is monic of degree 2n") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= kMaxDegree; ++n) {
        const auto det = polymat_det(polymat_from_equation(fixtures::random_equation(n, rng)));
        CHECK(det.degree() == 2 * n);
        CHECK(det.leading() == Complex(1.0));
    }
}

TEST_CASE("equation degree limits") {
    CHECK_THROWS_AS(MatrixEquation({}), DomainError);
    CHECK_THROWS_AS(MatrixEquation(std::vector<Mat2>(kMaxDegree + 1)), DomainError);
    CHECK(MatrixEquation(std::vector<Mat2>(kMaxDegree)).degree() == kMaxDegree);
}

}  // TEST_SUITE
