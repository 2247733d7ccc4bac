#pragma once

#include <optional>
#include <vector>

#include "mateq/matrix_core.hpp"
#include "mateq/solver.hpp"

namespace mateq {

/// p with C(p-1, 2) < m <= C(p, 2), and C(p, 2) - m = 3a + b with 0 <= b <= 2.
struct PChoice {
    int p = 0;
    int a = 0;
    int b = 0;
};

PChoice choose_p(int m);

/// Disjoint blocks covering {0, ..., p-1}; block {0} comes first.
using Partition = std::vector<std::vector<int>>;

/// Number of index pairs i < j that fall in different blocks.
int independent_pair_count(const Partition& partition);

/// The grouping of critical-vector indices that leaves exactly m independent
/// pairs. Throws DomainError for m in {4, 16} and UnreachableCase if the
/// arguments fall outside every case.
Partition build_partition(int m, int p, int a, int b);

/// Every choice made on the way from (n, m) to coefficient matrices.
struct ConstructionPlan {
    int n = 0;
    int m = 0;
    int p = 0;
    /// Multiplicity of the critical value 0, 2n - p + 1.
    int pbar = 0;
    Partition partition;
    /// Indexed by element of {0, ..., p-1}; entry 0 is the zero critical value.
    std::vector<Complex> lambdas;
    /// Shared n-th power per element (entry 0 unused and zero).
    std::vector<Complex> ys;
    std::vector<Vec2> vectors;
};

enum class ValueScheme {
    /// Consecutive integers for n up to 5, roots of unity above.
    automatic,
    /// Block k >= 1 gets y = y_start + k - 1; its j-th member gets the n-th
    /// root |y|^(1/n) exp(i (arg y + 2 pi j) / n).
    consecutive_integers,
    /// With B blocks, every lambda is a (B n)-th root of unity and block k
    /// gets y = exp(2 pi i (k - 1) / B). Members are placed greedily to keep
    /// the lambdas spread around the circle, which keeps the coefficient
    /// systems well conditioned for every n up to kMaxDegree.
    roots_of_unity,
};

/// Fills lambdas, ys and vectors. Throws DomainError if some y is 0 or a
/// block has more than n members.
void choose_values(ConstructionPlan& plan, ValueScheme scheme = ValueScheme::consecutive_integers, int y_start = 1);

/// Coefficients A_0..A_{n-1} that realise the plan's critical data.
/// Throws SingularSystem if the Vandermonde-type systems degenerate.
MatrixEquation solve_coefficients(const ConstructionPlan& plan);

/// Diagonal equations with exactly 4 (n >= 2) or 16 (n >= 4) solutions.
MatrixEquation special_case(int m, int n);

struct ConstructOptions {
    ValueScheme scheme = ValueScheme::automatic;
    /// First block value for ValueScheme::consecutive_integers.
    int y_start = 1;
    SolverOptions solver{};
};

struct ConstructionResult {
    MatrixEquation equation;
    /// Absent for the special cases.
    std::optional<ConstructionPlan> plan;
    /// 4 or 16 when a special case was used.
    std::optional<int> special_case;
    int expected_count = 0;
    /// Solutions found by the self-validation solve.
    SolutionSet solutions;
};

/// Equation of degree n with exactly m solutions, 1 <= m <= C(2n, 2).
/// Throws DomainError for out-of-range input and ValidationFailure when the
/// self-check solve disagrees with m.
ConstructionResult construct(int n, int m, const ConstructOptions& options = {});

}  // namespace mateq
