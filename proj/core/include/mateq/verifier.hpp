#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mateq/matrix_core.hpp"
#include "mateq/solver.hpp"

namespace mateq {

/// Outcome of one solve with a fixed root backend.
struct BackendOutcome {
    RootBackend backend = RootBackend::Aberth;
    /// Set when the solve threw; the other fields are then meaningless.
    std::optional<std::string> error;
    bool infinite = false;
    std::vector<Mat2> solutions;

    /// "infinite", the solution count, or "error: ...".
    std::string summary() const;
};

struct CrossCheck {
    BackendOutcome a;
    BackendOutcome b;
    bool agree = false;
};

/// Solves with both root backends. They agree when both are infinite, or both
/// finite with solution sets that match within ten times the dedupe distance.
CrossCheck count_cross_check(const MatrixEquation& eq, const SolverOptions& options = {});

struct SolutionCheck {
    Mat2 matrix;
    std::vector<Complex> eigenvalues;
    double residual = 0.0;
    double residual_bound = 0.0;
    /// Largest distance from an eigenvalue of the matrix to its nearest critical value.
    double eigen_gap = 0.0;
    /// Largest remainder coefficient of det M(t) divided by char(X)(t).
    double divisor_remainder = 0.0;
    /// divisor_rel, raised to the rounding level of det M at the eigenvalues.
    double divisor_bound = 0.0;
};

struct DuplicatePair {
    std::size_t first = 0;
    std::size_t second = 0;
    double distance = 0.0;
};

struct VerifyOptions {
    double residual_rel = 1e-7;
    double dedupe_rel = 1e-6;
    /// Eigenvalues must lie within eigen_rel * (1 + |lambda|) of a critical value.
    double eigen_rel = 1e-6;
    /// Divisor remainder relative to the largest coefficient of det M.
    double divisor_rel = 1e-6;
    /// Also re-solve with both backends and compare against the claim.
    bool cross_check = true;
    SolverOptions solver{};
};

struct VerificationReport {
    int degree = 0;
    double max_coeff = 0.0;
    bool infinite = false;
    std::int64_t claimed_count = 0;
    std::int64_t count_bound = 0;
    /// Finite solutions, or the three certificate samples, sorted by eigenvalue.
    std::vector<SolutionCheck> checks;
    std::vector<DuplicatePair> duplicates;
    bool bound_ok = true;
    std::optional<CrossCheck> cross_check;
    bool pass = true;
    std::vector<std::string> reasons;

    /// Deterministic plain-text rendering.
    std::string to_text() const;
};

/// Checks residuals, distinctness, eigenvalue containment, the characteristic
/// divisor property and the C(2n, 2) bound. Failures land in the report.
VerificationReport verify_solution_set(const MatrixEquation& eq, const SolutionSet& set,
                                       const VerifyOptions& options = {});

struct ScanOptions {
    /// Directions sampled in each two-dimensional critical space.
    int directions = 24;
    double residual_rel = 1e-7;
    /// Refined candidates within merge_rel * (1 + max |lambda|) are one solution.
    double merge_rel = 1e-3;
};

struct ScanResult {
    /// More distinct solutions than C(2n, 2) turned up.
    bool infinite = false;
    std::vector<Mat2> solutions;
};

/// Independent oracle for n <= 3: assembles every candidate from critical data
/// found with the companion backend (all pairs, scalars and rank-one nilpotent
/// shifts), refines each with Newton's method on f and keeps the distinct ones
/// that pass the residual test. Throws DomainError for n > 3.
ScanResult brute_force_scan(const MatrixEquation& eq, const ScanOptions& options = {});

/// Finite solution sets match up to a max-norm distance of tol.
bool same_solutions(const std::vector<Mat2>& a, const std::vector<Mat2>& b, double tol);

}  // namespace mateq
