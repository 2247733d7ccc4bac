#include "mateq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mateq/errors.hpp"

namespace mateq {

std::int64_t max_solution_count(int n) {
    const std::int64_t k = 2 * static_cast<std::int64_t>(n);
    return k * (k - 1) / 2;
}

double residual_bound(const MatrixEquation& eq, const Mat2& x, double residual_rel) {
    return residual_rel * (1.0 + eq.max_coeff()) * std::pow(1.0 + x.max_norm(), eq.degree());
}

std::string_view to_string(SolutionKind kind) {
    switch (kind) {
        case SolutionKind::diagonalizable_distinct: return "diagonalizable_distinct";
        case SolutionKind::scalar: return "scalar";
        case SolutionKind::non_diagonalizable: return "non_diagonalizable";
    }
    return "unknown";
}

std::optional<SolutionKind> solution_kind_from_string(std::string_view s) {
    for (auto k : {SolutionKind::diagonalizable_distinct, SolutionKind::scalar, SolutionKind::non_diagonalizable})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::string_view to_string(InfiniteReason reason) {
    switch (reason) {
        case InfiniteReason::two_dim_space_with_second_value: return "two_dim_space_with_second_value";
        case InfiniteReason::nilpotent_affine_family: return "nilpotent_affine_family";
        case InfiniteReason::scalar_plus_two_dim: return "scalar_plus_two_dim";
    }
    return "unknown";
}

std::optional<InfiniteReason> infinite_reason_from_string(std::string_view s) {
    for (auto r : {InfiniteReason::two_dim_space_with_second_value, InfiniteReason::nilpotent_affine_family,
                   InfiniteReason::scalar_plus_two_dim})
        if (to_string(r) == s) return r;
    return std::nullopt;
}

bool verify_certificate(const MatrixEquation& eq, InfiniteCertificate& cert, double residual_rel) {
    bool ok = true;
    for (std::size_t i = 0; i < cert.samples.size(); ++i) {
        const Mat2 x = cert.at(cert.samples[i]);
        cert.sample_residuals[i] = eval_equation(eq, x).max_norm();
        ok = ok && cert.sample_residuals[i] <= residual_bound(eq, x, residual_rel);
    }
    return ok;
}

SolutionSet::SolutionSet(std::vector<Solution> solutions, std::vector<CriticalDatum> critical)
    : outcome_(std::move(solutions)), critical_(std::move(critical)) {}

SolutionSet::SolutionSet(InfiniteCertificate certificate, std::vector<CriticalDatum> critical)
    : outcome_(std::move(certificate)), critical_(std::move(critical)) {}

RootList critical_values(const PolyMat2& m, const RootOptions& opt) {
    // triangular M(t) has det M = M00 M11; rooting the factors apart keeps
    // their clusters from smearing into each other
    if (!(m.e[1].is_zero() || m.e[2].is_zero())) return find_roots(polymat_det(m), opt);
    RootList all = find_roots(m.e[0], opt);
    const RootList second = find_roots(m.e[3], opt);
    double scale = 1.0;
    for (const auto& r : all) scale = std::max(scale, std::abs(r.value));
    for (const auto& r : second) scale = std::max(scale, std::abs(r.value));
    const std::size_t first_count = all.size();
    for (const auto& r : second) {
        auto same = std::find_if(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(first_count),
                                 [&](const Root& a) { return std::abs(a.value - r.value) <= opt.cluster_tol * scale; });
        if (same == all.begin() + static_cast<std::ptrdiff_t>(first_count)) {
            all.push_back(r);
            continue;
        }
        const int total = same->multiplicity + r.multiplicity;
        same->value = (static_cast<double>(same->multiplicity) * same->value + static_cast<double>(r.multiplicity) * r.value) /
                      static_cast<double>(total);
        same->multiplicity = total;
        same->suspect = same->suspect || r.suspect;
    }
    std::sort(all.begin(), all.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return all;
}

std::vector<CriticalDatum> critical_data(const MatrixEquation& eq, const SolverOptions& opt) {
    const PolyMat2 m = polymat_from_equation(eq);
    const RootList roots = critical_values(m, opt.roots);
    // Rank decisions are relative to the rounding scale of evaluating M at
    // lambda. Rows are equilibrated separately, which leaves the nullspace alone.
    auto row_scale = [&](int row, double radius) {
        double out = 1.0;
        for (int col = 0; col < 2; ++col) {
            const Poly& entry = m.e[static_cast<std::size_t>(2 * row + col)];
            double sum = 0.0;
            for (int i = entry.degree(); i >= 0; --i) sum = sum * radius + std::abs(entry[i]);
            out = std::max(out, sum);
        }
        return out;
    };
    std::vector<CriticalDatum> out;
    out.reserve(roots.size());
    for (const auto& r : roots) {
        Mat2 value = polymat_eval(m, r.value);
        for (int row = 0; row < 2; ++row) {
            const double s = std::max(1.0, 2.2e-4 * row_scale(row, std::abs(r.value)));
            for (int col = 0; col < 2; ++col) value(row, col) /= s;
        }
        auto ns = rank_and_nullspace(value, 1.0, opt.rank_tol);
        CriticalDatum d;
        d.value = r.value;
        d.multiplicity = r.multiplicity;
        d.suspect = r.suspect;
        if (ns.rank == 2) {
            // det M(lambda) vanishes, so a full-rank verdict is rounding
            d.suspect = true;
            ns = {1, {kernel_direction(value)}};
        }
        d.space_dim = static_cast<int>(ns.basis.size());
        d.basis = std::move(ns.basis);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<Solution> enumerate_diagonalizable(std::span<const CriticalDatum> data, const SolverOptions& opt) {
    std::vector<Solution> out;
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = i + 1; j < data.size(); ++j) {
            if (data[i].space_dim != 1 || data[j].space_dim != 1)
                throw DomainError("enumerate_diagonalizable: two-dimensional critical space");
            const Vec2& u = data[i].basis[0];
            const Vec2& v = data[j].basis[0];
            if (std::abs(cross(u, v)) <= opt.independence_tol) continue;
            const Mat2 basis = Mat2::from_columns(u, v);
            Solution s;
            s.matrix = basis * Mat2::diag(data[i].value, data[j].value) * inverse(basis);
            s.kind = SolutionKind::diagonalizable_distinct;
            s.eigenvalues = {data[i].value, data[j].value};
            s.eigenvectors = {u, v};
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<Solution> scalar_solutions(const MatrixEquation& eq, std::span<const CriticalDatum> data) {
    (void)eq;
    std::vector<Solution> out;
    for (const auto& d : data) {
        if (d.space_dim != 2) continue;
        Solution s;
        s.matrix = Mat2::scalar(d.value);
        s.kind = SolutionKind::scalar;
        s.eigenvalues = {d.value};
        s.eigenvectors = d.basis;
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

InfiniteCertificate two_dim_family(const CriticalDatum& plane, const CriticalDatum& other) {
    // X = lambda I + (mu' - lambda) w phi^T with phi^T w = 1 keeps w as the
    // mu'-eigenvector and the kernel of phi^T inside the lambda-plane.
    const Vec2& w = other.basis[0];
    const double w2 = std::norm(w[0]) + std::norm(w[1]);
    const Vec2 phi0{{std::conj(w[0]) / w2, std::conj(w[1]) / w2}};
    const Vec2 psi{{-w[1], w[0]}};
    const Complex gap = other.value - plane.value;
    auto outer = [](const Vec2& a, const Vec2& b) { return Mat2{{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]}}; };
    InfiniteCertificate cert;
    cert.reason = InfiniteReason::two_dim_space_with_second_value;
    cert.base = Mat2::scalar(plane.value) + gap * outer(w, phi0);
    cert.direction = gap * outer(w, psi);
    return cert;
}

struct Analysis {
    std::optional<InfiniteCertificate> certificate;
    std::vector<Solution> nondiagonal;
};

Analysis analyze(const MatrixEquation& eq, std::span<const CriticalDatum> data, const SolverOptions& opt) {
    Analysis out;
    for (const auto& d : data) {
        if (d.space_dim != 2) continue;
        for (const auto& other : data) {
            if (&other == &d) continue;
            auto cert = two_dim_family(d, other);
            if (!verify_certificate(eq, cert, opt.residual_rel))
                throw InternalInconsistency("two-dimensional critical space family failed its residual check");
            out.certificate = cert;
            return out;
        }
    }
    for (const auto& d : data) {
        if (d.multiplicity < 2) continue;
        auto r = find_nondiagonalizable(eq, d, opt);
        if (auto* cert = std::get_if<InfiniteCertificate>(&r)) {
            out.certificate = *cert;
            out.nondiagonal.clear();
            return out;
        }
        if (auto* s = std::get_if<Solution>(&r)) out.nondiagonal.push_back(std::move(*s));
    }
    return out;
}

bool eigen_less(const Solution& a, const Solution& b) {
    auto key = [](const Solution& s) {
        std::vector<std::pair<double, double>> k;
        for (const auto& v : s.eigenvalues) k.emplace_back(v.real(), v.imag());
        std::sort(k.begin(), k.end());
        return k;
    };
    return key(a) < key(b);
}

}  // namespace

std::optional<InfiniteCertificate> detect_infinite(const MatrixEquation& eq, std::span<const CriticalDatum> data,
                                                   const SolverOptions& opt) {
    return analyze(eq, data, opt).certificate;
}

SolutionSet solve_equation(const MatrixEquation& eq, const SolverOptions& opt) {
    auto data = critical_data(eq, opt);
    auto analysis = analyze(eq, data, opt);
    if (analysis.certificate) return SolutionSet(std::move(*analysis.certificate), std::move(data));

    std::vector<CriticalDatum> planar_free;
    for (const auto& d : data)
        if (d.space_dim == 1) planar_free.push_back(d);

    std::vector<Solution> candidates = scalar_solutions(eq, data);
    for (auto& s : enumerate_diagonalizable(planar_free, opt)) candidates.push_back(std::move(s));
    for (auto& s : analysis.nondiagonal) candidates.push_back(std::move(s));

    double lambda_scale = 0.0;
    for (const auto& d : data) lambda_scale = std::max(lambda_scale, std::abs(d.value));
    const double dedupe = opt.dedupe_rel * (1.0 + lambda_scale);

    std::vector<Solution> solutions;
    for (auto& c : candidates) {
        const bool seen = std::any_of(solutions.begin(), solutions.end(), [&](const Solution& s) {
            return (s.matrix - c.matrix).max_norm() <= dedupe;
        });
        if (seen) continue;
        c.residual = eval_equation(eq, c.matrix).max_norm();
        if (c.residual > residual_bound(eq, c.matrix, opt.residual_rel))
            throw InternalInconsistency("solution candidate failed its residual check (residual " +
                                        std::to_string(c.residual) + ")");
        solutions.push_back(std::move(c));
    }
    if (static_cast<std::int64_t>(solutions.size()) > max_solution_count(eq.degree()))
        throw InternalInconsistency("finite solution count exceeds C(2n, 2)");
    std::stable_sort(solutions.begin(), solutions.end(), eigen_less);
    return SolutionSet(std::move(solutions), std::move(data));
}

}  // namespace mateq
