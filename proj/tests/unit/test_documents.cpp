#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "fixtures.hpp"
#include "mateq/constructor.hpp"
#include "mateq/documents.hpp"
#include "mateq/errors.hpp"

using namespace mateq;

TEST_SUITE("documents") {

TEST_CASE("equation documents round-trip exactly") {
    for (int n = 1; n <= 5; ++n) {
        for (int m = 1; m <= max_solution_count(n); ++m) {
            const auto eq = construct(n, m).equation;
            const auto text = doc::dump(doc::equation_document(eq));
            CHECK(doc::equation_from_document(doc::Json::parse(text)) == eq);
        }
    }
    const MatrixEquation odd({fixtures::m2(0.1, Complex(1.0 / 3.0, -2e-300), 1e300, Complex(0.0, 5e-324))});
    CHECK(doc::equation_from_document(doc::Json::parse(doc::dump(doc::equation_document(odd)))) == odd);
}

TEST_CASE("equation documents list A_0 first") {
    const auto j = doc::equation_document(fixtures::four_solutions());
    CHECK(j["format_version"] == "1");
    CHECK(j["n"] == 2);
    CHECK(j["coefficients"][0][1][1] == doc::Json::array({-4.0, 0.0}));
    CHECK(j["coefficients"][1][0][0] == doc::Json::array({0.0, 0.0}));
}

TEST_CASE("solution documents round-trip") {
    for (const auto& eq : {fixtures::four_solutions(), fixtures::square_is_identity(), fixtures::square_is_jordan()}) {
        const auto set = solve_equation(eq);
        const auto j = doc::solution_document(set);
        const auto back = doc::solutions_from_document(doc::Json::parse(doc::dump(j)));
        CHECK(back.is_finite() == set.is_finite());
        CHECK(doc::solution_document(back) == j);
    }
    const auto inf = doc::solution_document(solve_equation(fixtures::square_is_identity()));
    CHECK(inf["classification"] == "infinite");
    CHECK(inf["certificate"]["reason"] == "two_dim_space_with_second_value");
}

TEST_CASE("malformed documents name the field") {
    auto expect_error = [](const doc::Json& j, const std::string& field) {
        try {
            (void)doc::equation_from_document(j);
            FAIL("parsed");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    auto j = doc::equation_document(fixtures::four_solutions());
    auto missing = j;
    missing.erase("n");
    expect_error(missing, "n");
    auto count = j;
    count["n"] = 3;
    expect_error(count, "coefficients");
    auto entry = j;
    entry["coefficients"][1][0][1] = "x";
    expect_error(entry, "coefficients[1][0][1]");
    auto version = j;
    version["format_version"] = "2";
    expect_error(version, "format_version");

    auto sol = doc::solution_document(solve_equation(fixtures::four_solutions()));
    sol["solutions"][0]["kind"] = "unknown";
    CHECK_THROWS_AS(doc::solutions_from_document(sol), ParseError);
}

TEST_CASE("files") {
    const auto path = std::filesystem::temp_directory_path() / "mateq_documents_test.json";
    doc::write_text(path, "{\"a\": 1}\n");
    CHECK(doc::read_document(path)["a"] == 1);
    doc::write_text(path, "{");
    CHECK_THROWS_AS(doc::read_document(path), ParseError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(doc::read_document(path), ParseError);
}

}  // TEST_SUITE
