#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mateq/constructor.hpp"
#include "mateq/errors.hpp"
#include "mateq/verifier.hpp"

using namespace mateq;
using fixtures::m2;

namespace {

std::vector<Mat2> matrices(const SolutionSet& set) {
    std::vector<Mat2> out;
    for (const auto& s : set.solutions()) out.push_back(s.matrix);
    return out;
}

bool mentions(const VerificationReport& r, const std::string& word) {
    for (const auto& reason : r.reasons)
        if (reason.find(word) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("verify_solution_set") {
    const auto eq = fixtures::four_solutions();
    const auto set = solve_equation(eq);
    const auto ok = verify_solution_set(eq, set);
    CHECK(ok.pass);
    CHECK(ok.claimed_count == 4);
    CHECK(ok.count_bound == 6);
    REQUIRE(ok.cross_check);
    CHECK(ok.cross_check->agree);
    CHECK(ok.to_text() == verify_solution_set(eq, set).to_text());

    auto dup = set.solutions();
    dup.push_back(dup.front());
    const auto with_dup = verify_solution_set(eq, SolutionSet(dup, set.critical()));
    CHECK_FALSE(with_dup.pass);
    CHECK(with_dup.duplicates.size() == 1);
    CHECK(mentions(with_dup, "duplicate"));

    std::vector<Solution> fabricated(16);
    for (int i = 0; i < 16; ++i) fabricated[static_cast<std::size_t>(i)].matrix = Mat2::scalar(i);
    const auto too_many = verify_solution_set(eq, SolutionSet(fabricated));
    CHECK_FALSE(too_many.pass);
    CHECK_FALSE(too_many.bound_ok);

    auto perturbed = set.solutions();
    perturbed[0].matrix(0, 1) += 1e-2;
    const auto bad = verify_solution_set(eq, SolutionSet(perturbed, set.critical()));
    CHECK_FALSE(bad.pass);
    CHECK(mentions(bad, "residual"));
}

TEST_CASE("infinite sets verify their certificates") {
    for (const auto& eq : {fixtures::square_is_identity(), fixtures::square_is_zero()}) {
        const auto report = verify_solution_set(eq, solve_equation(eq));
        CHECK(report.pass);
        CHECK(report.infinite);
        CHECK(report.checks.size() == 3);
    }
    const auto eq = fixtures::square_is_identity();
    const auto wrong = verify_solution_set(eq, SolutionSet(std::vector<Solution>{}));
    CHECK_FALSE(wrong.pass);
}

TEST_CASE("count_cross_check") {
    const auto four = count_cross_check(fixtures::four_solutions());
    CHECK(four.agree);
    CHECK(four.a.solutions.size() == 4);
    CHECK(four.b.solutions.size() == 4);
    CHECK(four.a.summary() == "4");

    const auto inv = count_cross_check(fixtures::square_is_identity());
    CHECK(inv.agree);
    CHECK(inv.a.infinite);
    CHECK(inv.b.infinite);
    CHECK(inv.a.summary() == "infinite");

    const auto ten = count_cross_check(construct(3, 10).equation);
    CHECK(ten.agree);
    CHECK(ten.a.solutions.size() == 10);
    CHECK(ten.b.solutions.size() == 10);
}

TEST_CASE("brute_force_scan") {
    const auto four = brute_force_scan(fixtures::four_solutions());
    CHECK_FALSE(four.infinite);
    CHECK(four.solutions.size() == 4);
    for (double a : {1.0, -1.0})
        for (double b : {2.0, -2.0}) CHECK(fixtures::contains(four.solutions, Mat2::diag(a, b), 1e-8));

    const auto none = brute_force_scan(fixtures::square_is_nilpotent());
    CHECK_FALSE(none.infinite);
    CHECK(none.solutions.empty());

    const auto one = brute_force_scan(fixtures::degree_one());
    REQUIRE(one.solutions.size() == 1);
    CHECK(fixtures::distance(one.solutions[0], m2(0.0, 1.0, 0.0, 1.0)) < 1e-8);

    CHECK(brute_force_scan(fixtures::square_is_identity()).infinite);
    CHECK_THROWS_AS(brute_force_scan(construct(4, 3).equation), DomainError);
}

TEST_CASE("scan agrees with the solver on small equations") {
    std::vector<MatrixEquation> eqs{fixtures::four_solutions(), fixtures::degree_one(), fixtures::square_is_identity(),
                                    fixtures::square_is_zero(), fixtures::square_is_nilpotent(),
                                    fixtures::square_is_jordan(), fixtures::shifted_square_zero()};
    std::mt19937_64 rng(23);
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i < 5; ++i) eqs.push_back(fixtures::random_equation(n, rng));
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= max_solution_count(n); m += 2) eqs.push_back(construct(n, m).equation);

    for (std::size_t i = 0; i < eqs.size(); ++i) {
        CAPTURE(i);
        const auto set = solve_equation(eqs[i]);
        const auto scan = brute_force_scan(eqs[i]);
        REQUIRE(scan.infinite == !set.is_finite());
        if (set.is_finite()) CHECK(same_solutions(matrices(set), scan.solutions, 1e-6));
    }
}

TEST_CASE("same_solutions") {
    const std::vector<Mat2> a{Mat2::identity(), Mat2::zero()};
    const std::vector<Mat2> b{Mat2::zero(), Mat2::identity()};
    CHECK(same_solutions(a, b, 1e-12));
    CHECK_FALSE(same_solutions(a, {Mat2::zero()}, 1e-12));
    CHECK_FALSE(same_solutions(a, {Mat2::zero(), Mat2::scalar(2.0)}, 1e-12));
}

}  // TEST_SUITE
