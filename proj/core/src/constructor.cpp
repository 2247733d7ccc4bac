#include "mateq/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mateq/errors.hpp"

namespace mateq {
namespace {

int choose2(int p) { return p * (p - 1) / 2; }

void push_run(Partition& out, int first, int size) {
    std::vector<int> block(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) block[static_cast<std::size_t>(i)] = first + i;
    out.push_back(std::move(block));
}

void push_triples(Partition& out, int count) {
    for (int t = 0; t < count; ++t) push_run(out, 3 * t + 1, 3);
}

void push_singletons(Partition& out, int from, int p) {
    for (int i = from; i < p; ++i) out.push_back({i});
}

void check_partition(const Partition& part, int m, int p) {
    std::vector<int> seen(static_cast<std::size_t>(p), 0);
    std::size_t largest = 0;
    for (const auto& block : part) {
        largest = std::max(largest, block.size());
        for (int i : block) {
            if (i < 0 || i >= p) throw InternalInconsistency("partition index out of range");
            ++seen[static_cast<std::size_t>(i)];
        }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
        throw InternalInconsistency("partition does not cover {0..p-1} exactly once");
    if (part.empty() || part.front() != std::vector<int>{0})
        throw InternalInconsistency("block {0} must be a singleton");
    if (largest > static_cast<std::size_t>((p + 1) / 2))
        throw InternalInconsistency("partition block larger than ceil(p/2)");
    if (independent_pair_count(part) != m)
        throw InternalInconsistency("partition has " + std::to_string(independent_pair_count(part)) +
                                    " independent pairs, expected " + std::to_string(m));
}

Complex power(Complex x, int k) {
    Complex out = 1.0;
    for (int i = 0; i < k; ++i) out *= x;
    return out;
}

}  // namespace

PChoice choose_p(int m) {
    if (m < 1) throw DomainError("choose_p: m must be positive, got " + std::to_string(m));
    int p = 2;
    while (choose2(p) < m) ++p;
    const int equivalent = choose2(p) - m;
    return {p, equivalent / 3, equivalent % 3};
}

int independent_pair_count(const Partition& partition) {
    int total = 0;
    int same = 0;
    for (const auto& block : partition) {
        total += static_cast<int>(block.size());
        same += choose2(static_cast<int>(block.size()));
    }
    return choose2(total) - same;
}

Partition build_partition(int m, int p, int a, int b) {
    if (m < 1 || p < 2 || !(choose2(p - 1) < m && m <= choose2(p)) || b < 0 || b > 2 || 3 * a + b != choose2(p) - m)
        throw DomainError("build_partition: inconsistent (m, p, a, b)");
    if (m == 4 || m == 16) throw DomainError("build_partition: m = " + std::to_string(m) + " uses a special case");

    Partition out{{0}};
    if (b == 0) {
        push_triples(out, a);
        push_singletons(out, 3 * a + 1, p);
    } else if (b == 1) {
        push_triples(out, a);
        push_run(out, 3 * a + 1, 2);
        push_singletons(out, 3 * a + 3, p);
    } else if (p > 3 * a + 4) {
        // two pairs; preferred over the quadruple layout when both fit
        push_triples(out, a);
        push_run(out, 3 * a + 1, 2);
        push_run(out, 3 * a + 3, 2);
        push_singletons(out, 3 * a + 5, p);
    } else if (a >= 2) {
        push_triples(out, a - 2);
        push_run(out, 3 * a - 5, 4);
        push_run(out, 3 * a - 1, 2);
        push_run(out, 3 * a + 1, 2);
        push_singletons(out, 3 * a + 3, p);
    } else {
        throw UnreachableCase("build_partition: b = 2, a < 2, p <= 3a + 4 with m = " + std::to_string(m));
    }
    check_partition(out, m, p);
    return out;
}

namespace {

void integer_values(ConstructionPlan& plan, int y_start) {
    int block_number = 0;
    for (const auto& block : plan.partition) {
        if (block == std::vector<int>{0}) continue;
        ++block_number;
        const int y_int = y_start + block_number - 1;
        if (y_int == 0) throw DomainError("choose_values: block value y must be nonzero");
        const Complex y{static_cast<double>(y_int)};
        const double radius = std::pow(std::abs(y), 1.0 / plan.n);
        for (std::size_t j = 0; j < block.size(); ++j) {
            const auto idx = static_cast<std::size_t>(block[j]);
            const double angle = (std::arg(y) + 2.0 * std::numbers::pi * static_cast<double>(j)) / plan.n;
            plan.lambdas[idx] = std::polar(radius, angle);
            plan.ys[idx] = y;
            plan.vectors[idx] = Vec2{{1.0, y}};
        }
    }
}

void unit_circle_values(ConstructionPlan& plan) {
    const int blocks = static_cast<int>(plan.partition.size()) - 1;
    const int slots = blocks * plan.n;
    // slot s sits at angle 2 pi s / slots and has n-th power class s mod blocks
    std::vector<int> taken;
    auto gap = [&](int s) {
        int best = slots;
        for (int c : taken) {
            const int d = std::abs(s - c) % slots;
            best = std::min({best, d, slots - d});
        }
        return best;
    };
    int k = 0;
    for (const auto& block : plan.partition) {
        if (block == std::vector<int>{0}) continue;
        std::vector<int> free;
        for (int j = 0; j < plan.n; ++j) free.push_back(k + j * blocks);
        const Complex y = std::polar(1.0, 2.0 * std::numbers::pi * k / blocks);
        for (int idx : block) {
            auto pick = free.begin();
            for (auto it = free.begin(); it != free.end(); ++it)
                if (gap(*it) > gap(*pick)) pick = it;
            const int s = *pick;
            free.erase(pick);
            taken.push_back(s);
            const auto i = static_cast<std::size_t>(idx);
            plan.lambdas[i] = std::polar(1.0, 2.0 * std::numbers::pi * s / slots);
            plan.ys[i] = y;
            plan.vectors[i] = Vec2{{1.0, y}};
        }
        ++k;
    }
}

}  // namespace

void choose_values(ConstructionPlan& plan, ValueScheme scheme, int y_start) {
    const int p = plan.p;
    plan.lambdas.assign(static_cast<std::size_t>(p), Complex{});
    plan.ys.assign(static_cast<std::size_t>(p), Complex{});
    plan.vectors.assign(static_cast<std::size_t>(p), Vec2{});
    plan.vectors[0] = Vec2{{1.0, 0.0}};
    for (const auto& block : plan.partition)
        if (static_cast<int>(block.size()) > plan.n && block != std::vector<int>{0})
            throw DomainError("choose_values: block larger than n has no distinct n-th roots");

    if (scheme == ValueScheme::automatic)
        scheme = plan.n <= 5 ? ValueScheme::consecutive_integers : ValueScheme::roots_of_unity;
    if (scheme == ValueScheme::consecutive_integers)
        integer_values(plan, y_start);
    else
        unit_circle_values(plan);
}

MatrixEquation solve_coefficients(const ConstructionPlan& plan) {
    const int n = plan.n;
    const int p = plan.p;
    const int pbar = plan.pbar;
    if (p < 2 || pbar != 2 * n - p + 1) throw DomainError("solve_coefficients: inconsistent plan");
    const int unknowns = p - 1;
    std::vector<Mat2> coeffs(static_cast<std::size_t>(n), Mat2::zero());
    auto at = [&](int power) -> Mat2& { return coeffs[static_cast<std::size_t>(power)]; };

    if (pbar <= n) {
        // Row i: sum_{k >= pbar} a11^(k) lambda^k + sum_k a12^(k) lambda^k y = -lambda^n.
        // The second row uses the same matrix with right-hand side -lambda^n y.
        Eigen::MatrixXcd system(unknowns, unknowns);
        Eigen::VectorXcd rhs_first(unknowns);
        Eigen::VectorXcd rhs_second(unknowns);
        for (int i = 1; i < p; ++i) {
            const Complex lambda = plan.lambdas[static_cast<std::size_t>(i)];
            const Complex y = plan.ys[static_cast<std::size_t>(i)];
            int col = 0;
            for (int k = pbar; k < n; ++k) system(i - 1, col++) = power(lambda, k);
            for (int k = 0; k < n; ++k) system(i - 1, col++) = power(lambda, k) * y;
            rhs_first(i - 1) = -power(lambda, n);
            rhs_second(i - 1) = -power(lambda, n) * y;
        }
        const Eigen::VectorXcd first = dense_solve(system, rhs_first);
        const Eigen::VectorXcd second = dense_solve(system, rhs_second);
        int col = 0;
        for (int k = pbar; k < n; ++k, ++col) {
            at(k)(0, 0) = first(col);
            at(k)(1, 0) = second(col);
        }
        for (int k = 0; k < n; ++k, ++col) {
            at(k)(0, 1) = first(col);
            at(k)(1, 1) = second(col);
        }
    } else {
        // Upper-triangular M(t): a12 = (-1, 0, ..., 0) solves the first row
        // outright; the second row, divided by y, is a Vandermonde-type system.
        at(0)(0, 1) = -1.0;
        const int low = pbar - n;
        Eigen::MatrixXcd system(unknowns, unknowns);
        Eigen::VectorXcd rhs(unknowns);
        for (int i = 1; i < p; ++i) {
            const Complex lambda = plan.lambdas[static_cast<std::size_t>(i)];
            for (int k = low; k < n; ++k) system(i - 1, k - low) = power(lambda, k);
            rhs(i - 1) = -power(lambda, n);
        }
        const Eigen::VectorXcd x = dense_solve(system, rhs);
        for (int k = low; k < n; ++k) at(k)(1, 1) = x(k - low);
    }
    return MatrixEquation(std::move(coeffs));
}

MatrixEquation special_case(int m, int n) {
    std::vector<Root> upper;
    std::vector<Root> lower;
    if (m == 4) {
        if (n < 2) throw DomainError("special case m = 4 needs n >= 2");
        upper = {{1.0, 1}, {-1.0, n - 1}};
        lower = {{2.0, 1}, {-2.0, n - 1}};
    } else if (m == 16) {
        if (n < 4) throw DomainError("special case m = 16 needs n >= 4");
        upper = {{3.0, 1}, {-3.0, 1}, {1.0, 1}, {-1.0, n - 3}};
        lower = {{4.0, 1}, {-4.0, 1}, {2.0, 1}, {-2.0, n - 3}};
    } else {
        throw DomainError("special_case: m must be 4 or 16, got " + std::to_string(m));
    }
    const Poly d0 = expand_from_roots(upper);
    const Poly d1 = expand_from_roots(lower);
    std::vector<Mat2> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) coeffs.push_back(Mat2::diag(d0[i], d1[i]));
    return MatrixEquation(std::move(coeffs));
}

ConstructionResult construct(int n, int m, const ConstructOptions& options) {
    if (n < 1 || n > kMaxDegree)
        throw DomainError("construct: n must lie in [1, " + std::to_string(kMaxDegree) + "], got " + std::to_string(n));
    if (m < 1 || m > max_solution_count(n))
        throw DomainError("construct: m must lie in [1, " + std::to_string(max_solution_count(n)) + "], got " +
                          std::to_string(m));

    std::optional<ConstructionPlan> plan;
    std::optional<int> special;
    std::optional<MatrixEquation> equation;
    if (m == 4 || m == 16) {
        special = m;
        equation = special_case(m, n);
    } else {
        const auto [p, a, b] = choose_p(m);
        ConstructionPlan pl;
        pl.n = n;
        pl.m = m;
        pl.p = p;
        pl.pbar = 2 * n - p + 1;
        pl.partition = build_partition(m, p, a, b);
        choose_values(pl, options.scheme, options.y_start);
        equation = solve_coefficients(pl);
        plan = std::move(pl);
    }

    SolutionSet solutions = solve_equation(*equation, options.solver);
    if (!solutions.is_finite())
        throw ValidationFailure("construct(" + std::to_string(n) + ", " + std::to_string(m) +
                                "): equation classified as infinite");
    if (static_cast<int>(solutions.solutions().size()) != m)
        throw ValidationFailure("construct(" + std::to_string(n) + ", " + std::to_string(m) + "): found " +
                                std::to_string(solutions.solutions().size()) + " solutions");
    return {std::move(*equation), std::move(plan), special, m, std::move(solutions)};
}

}  // namespace mateq
