#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mateq/solver.hpp"

using namespace mateq;
using fixtures::m2;

namespace {

std::vector<Mat2> matrices(const SolutionSet& set) {
    std::vector<Mat2> out;
    for (const auto& s : set.solutions()) out.push_back(s.matrix);
    return out;
}

const CriticalDatum& datum_at(const std::vector<CriticalDatum>& data, Complex value) {
    const auto it = std::find_if(data.begin(), data.end(),
                                 [&](const CriticalDatum& d) { return std::abs(d.value - value) < 1e-8; });
    REQUIRE(it != data.end());
    return *it;
}

bool parallel(const Vec2& a, const Vec2& b) { return std::abs(cross(a, b)) < 1e-8; }

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("critical_data") {
    SUBCASE("four-solution equation") {
        const auto data = critical_data(fixtures::four_solutions());
        CHECK(data.size() == 4);
        for (double v : {1.0, -1.0}) {
            const auto& d = datum_at(data, v);
            CHECK(d.multiplicity == 1);
            CHECK(d.space_dim == 1);
            CHECK(parallel(d.basis[0], Vec2{{1.0, 0.0}}));
        }
        for (double v : {2.0, -2.0}) {
            const auto& d = datum_at(data, v);
            CHECK(d.space_dim == 1);
            CHECK(parallel(d.basis[0], Vec2{{0.0, 1.0}}));
        }
    }
    SUBCASE("X^2 = 0") {
        const auto data = critical_data(fixtures::square_is_zero());
        REQUIRE(data.size() == 1);
        CHECK(data[0].multiplicity == 4);
        CHECK(data[0].space_dim == 2);
        CHECK(data[0].basis.size() == 2);
    }
    SUBCASE("degree one") {
        const auto data = critical_data(fixtures::degree_one());
        REQUIRE(data.size() == 2);
        const auto& zero = datum_at(data, 0.0);
        CHECK(parallel(zero.basis[0], Vec2{{1.0, 0.0}}));
        const auto& one = datum_at(data, 1.0);
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(one.basis[0][0] - r) < 1e-12);
        CHECK(std::abs(one.basis[0][1] - r) < 1e-12);
    }
}

TEST_CASE("enumerate_diagonalizable") {
    const auto sols = enumerate_diagonalizable(critical_data(fixtures::four_solutions()));
    CHECK(sols.size() == 4);
    std::vector<Mat2> got;
    for (const auto& s : sols) got.push_back(s.matrix);
    for (double a : {1.0, -1.0})
        for (double b : {2.0, -2.0}) CHECK(fixtures::contains(got, Mat2::diag(a, b), 1e-10));

    std::vector<CriticalDatum> shared{{1.0, 1, 1, {Vec2{{1.0, 0.0}}}}, {2.0, 1, 1, {Vec2{{1.0, 0.0}}}}};
    CHECK(enumerate_diagonalizable(shared).empty());

    const auto one = enumerate_diagonalizable(critical_data(fixtures::degree_one()));
    REQUIRE(one.size() == 1);
    CHECK(fixtures::distance(one[0].matrix, m2(0.0, 1.0, 0.0, 1.0)) < 1e-12);
}

TEST_CASE("scalar_solutions") {
    const auto eq0 = fixtures::square_is_zero();
    const auto zero = scalar_solutions(eq0, critical_data(eq0));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].matrix.max_norm() < 1e-12);

    const auto eq4 = fixtures::four_solutions();
    CHECK(scalar_solutions(eq4, critical_data(eq4)).empty());

    const auto shifted = fixtures::shifted_square_zero();
    const auto id = scalar_solutions(shifted, critical_data(shifted));
    REQUIRE(id.size() == 1);
    CHECK(fixtures::distance(id[0].matrix, Mat2::identity()) < 1e-8);
}

TEST_CASE("find_nondiagonalizable") {
    SUBCASE("square roots of a Jordan block") {
        const auto eq = fixtures::square_is_jordan();
        const auto data = critical_data(eq);
        for (double s : {1.0, -1.0}) {
            const auto& d = datum_at(data, s);
            REQUIRE(d.multiplicity == 2);
            const auto r = find_nondiagonalizable(eq, d);
            REQUIRE(std::holds_alternative<Solution>(r));
            CHECK(fixtures::distance(std::get<Solution>(r).matrix, m2(s, s / 2, 0.0, s)) < 1e-8);
        }
    }
    SUBCASE("X^2 = 0 gives a family") {
        const auto eq = fixtures::square_is_zero();
        const auto data = critical_data(eq);
        CHECK(std::holds_alternative<InfiniteCertificate>(find_nondiagonalizable(eq, data[0])));
    }
    SUBCASE("a nonzero nilpotent has no square root") {
        const auto eq = fixtures::square_is_nilpotent();
        const auto data = critical_data(eq);
        REQUIRE(data.size() == 1);
        CHECK(std::holds_alternative<std::monostate>(find_nondiagonalizable(eq, data[0])));
    }
}

TEST_CASE("detect_infinite") {
    const auto inv = fixtures::square_is_identity();
    const auto cert = detect_infinite(inv, critical_data(inv));
    REQUIRE(cert);
    CHECK(cert->reason == InfiniteReason::two_dim_space_with_second_value);

    const auto zero = fixtures::square_is_zero();
    const auto nil = detect_infinite(zero, critical_data(zero));
    REQUIRE(nil);
    CHECK(nil->reason == InfiniteReason::nilpotent_affine_family);

    const auto four = fixtures::four_solutions();
    CHECK_FALSE(detect_infinite(four, critical_data(four)));
}

TEST_CASE("solve_equation") {
    const auto four = solve_equation(fixtures::four_solutions());
    REQUIRE(four.is_finite());
    CHECK(four.solutions().size() == 4);

    const auto none = solve_equation(fixtures::square_is_nilpotent());
    REQUIRE(none.is_finite());
    CHECK(none.solutions().empty());

    CHECK_FALSE(solve_equation(fixtures::square_is_identity()).is_finite());

    const auto jordan = solve_equation(fixtures::square_is_jordan());
    REQUIRE(jordan.is_finite());
    CHECK(jordan.solutions().size() == 2);
    for (const auto& s : jordan.solutions()) CHECK(s.kind == SolutionKind::non_diagonalizable);

    const auto shifted = solve_equation(fixtures::shifted_square_zero());
    REQUIRE_FALSE(shifted.is_finite());
    CHECK(shifted.certificate().reason == InfiniteReason::scalar_plus_two_dim);

    const auto one = solve_equation(fixtures::degree_one());
    REQUIRE(one.is_finite());
    REQUIRE(one.solutions().size() == 1);
    CHECK(fixtures::distance(one.solutions()[0].matrix, m2(0.0, 1.0, 0.0, 1.0)) < 1e-12);
}

TEST_CASE("certificates self-verify") {
    for (const auto& eq : {fixtures::square_is_identity(), fixtures::square_is_zero(), fixtures::shifted_square_zero()}) {
        auto cert = solve_equation(eq).certificate();
        CHECK(verify_certificate(eq, cert));
        for (double r : cert.sample_residuals) CHECK(r <= 1e-10);
        CHECK(cert.direction.max_norm() > 0.0);
    }
}

TEST_CASE("solution invariants on random equations") {
    std::mt19937_64 rng(19);
    for (int n = 1; n <= 4; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            const auto eq = fixtures::random_equation(n, rng);
            const auto set = solve_equation(eq);
            REQUIRE(set.is_finite());
            const auto& sols = set.solutions();
            CHECK(static_cast<std::int64_t>(sols.size()) <= max_solution_count(n));
            const auto ms = matrices(set);
            for (std::size_t i = 0; i < ms.size(); ++i) {
                CHECK(fixtures::distance(eval_equation(eq, ms[i]), Mat2::zero()) <= residual_bound(eq, ms[i]));
                for (std::size_t j = i + 1; j < ms.size(); ++j) CHECK(fixtures::distance(ms[i], ms[j]) > 1e-6);
            }
        }
    }
}

TEST_CASE("solver options") {
    CHECK(max_solution_count(1) == 1);
    CHECK(max_solution_count(2) == 6);
    CHECK(max_solution_count(16) == 496);
    CHECK(to_string(SolutionKind::non_diagonalizable) == "non_diagonalizable");
    CHECK(solution_kind_from_string("scalar") == SolutionKind::scalar);
    CHECK_FALSE(solution_kind_from_string("other"));
    CHECK(infinite_reason_from_string("scalar_plus_two_dim") == InfiniteReason::scalar_plus_two_dim);
}

}  // TEST_SUITE
