#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "mateq/matrix_core.hpp"
#include "mateq/scalar_poly.hpp"

namespace mateq {

struct SolverOptions {
    RootOptions roots{};
    /// Rank decisions on M(lambda), relative to the magnitude of its entries.
    double rank_tol = 1e-8;
    /// Unit critical vectors u, v are independent when |det[u v]| exceeds this.
    double independence_tol = 1e-6;
    /// Solutions closer than dedupe_rel * (1 + max |lambda|) are the same.
    double dedupe_rel = 1e-6;
    /// Acceptance: |f(X)|_max <= residual_rel * (1 + max coeff) * (1 + |X|)^n.
    double residual_rel = 1e-7;
};

/// C(2n, 2), the most solutions a finite solution set can have.
std::int64_t max_solution_count(int n);

/// Residual acceptance threshold for a candidate X.
double residual_bound(const MatrixEquation& eq, const Mat2& x, double residual_rel = 1e-7);

/// A critical value with its multiplicity and critical space.
struct CriticalDatum {
    Complex value;
    int multiplicity = 1;
    int space_dim = 1;
    std::vector<Vec2> basis;
    bool suspect = false;
};

enum class SolutionKind { diagonalizable_distinct, scalar, non_diagonalizable };

std::string_view to_string(SolutionKind kind);
std::optional<SolutionKind> solution_kind_from_string(std::string_view s);

struct Solution {
    Mat2 matrix;
    SolutionKind kind = SolutionKind::diagonalizable_distinct;
    /// Critical values used to assemble the matrix (one entry for scalar and
    /// non-diagonalizable solutions).
    std::vector<Complex> eigenvalues;
    std::vector<Vec2> eigenvectors;
    double residual = 0.0;
};

enum class InfiniteReason { two_dim_space_with_second_value, nilpotent_affine_family, scalar_plus_two_dim };

std::string_view to_string(InfiniteReason reason);
std::optional<InfiniteReason> infinite_reason_from_string(std::string_view s);

/// One-parameter family X(mu) = base + mu * direction of verified solutions.
struct InfiniteCertificate {
    InfiniteReason reason = InfiniteReason::nilpotent_affine_family;
    Mat2 base;
    Mat2 direction;
    std::array<Complex, 3> samples{Complex{-0.5}, Complex{0.5}, Complex{1.5}};
    std::array<double, 3> sample_residuals{};

    Mat2 at(Complex mu) const { return base + mu * direction; }
};

/// Fills sample_residuals; returns true when every sample is within its bound.
bool verify_certificate(const MatrixEquation& eq, InfiniteCertificate& cert, double residual_rel = 1e-7);

class SolutionSet {
public:
    SolutionSet() = default;
    SolutionSet(std::vector<Solution> solutions, std::vector<CriticalDatum> critical = {});
    SolutionSet(InfiniteCertificate certificate, std::vector<CriticalDatum> critical = {});

    bool is_finite() const { return std::holds_alternative<std::vector<Solution>>(outcome_); }
    /// Throws std::bad_variant_access on an infinite set.
    const std::vector<Solution>& solutions() const { return std::get<std::vector<Solution>>(outcome_); }
    const InfiniteCertificate& certificate() const { return std::get<InfiniteCertificate>(outcome_); }
    const std::vector<CriticalDatum>& critical() const { return critical_; }

private:
    std::variant<std::vector<Solution>, InfiniteCertificate> outcome_;
    std::vector<CriticalDatum> critical_;
};

/// Roots of det M(t) with multiplicities. A triangular M(t) is rooted one
/// diagonal entry at a time.
RootList critical_values(const PolyMat2& m, const RootOptions& opt = {});

std::vector<CriticalDatum> critical_data(const MatrixEquation& eq, const SolverOptions& opt = {});

/// Pairs of distinct critical values with independent critical vectors.
/// Every datum must have a one-dimensional critical space.
std::vector<Solution> enumerate_diagonalizable(std::span<const CriticalDatum> data, const SolverOptions& opt = {});

/// lambda * I for every critical value whose critical space is the whole plane.
std::vector<Solution> scalar_solutions(const MatrixEquation& eq, std::span<const CriticalDatum> data);

/// Outcome of the search for X = lambda I + N, N nonzero nilpotent.
using NondiagonalResult = std::variant<std::monostate, Solution, InfiniteCertificate>;

/// Requires datum.multiplicity >= 2.
NondiagonalResult find_nondiagonalizable(const MatrixEquation& eq, const CriticalDatum& datum,
                                         const SolverOptions& opt = {});

std::optional<InfiniteCertificate> detect_infinite(const MatrixEquation& eq, std::span<const CriticalDatum> data,
                                                   const SolverOptions& opt = {});

/// Full pipeline. Throws NonConvergence from root finding and
/// InternalInconsistency when a structurally valid candidate fails its residual.
SolutionSet solve_equation(const MatrixEquation& eq, const SolverOptions& opt = {});

}  // namespace mateq
