#include "mateq/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "mateq/errors.hpp"

namespace mateq {
namespace {

std::vector<Complex> matrix_eigenvalues(const Mat2& x) {
    const Complex half = x.trace() / 2.0;
    const Complex root = std::sqrt(half * half - x.det());
    return {half + root, half - root};
}

std::vector<std::pair<double, double>> eigen_key(std::vector<Complex> values) {
    std::vector<std::pair<double, double>> key;
    for (const auto& v : values) key.emplace_back(v.real(), v.imag());
    std::sort(key.begin(), key.end());
    return key;
}

double max_abs_value(const std::vector<Root>& roots) {
    double out = 0.0;
    for (const auto& r : roots) out = std::max(out, std::abs(r.value));
    return out;
}

double lambda_scale(const SolutionSet& set) {
    double out = 0.0;
    for (const auto& d : set.critical()) out = std::max(out, std::abs(d.value));
    return out;
}

BackendOutcome run_backend(const MatrixEquation& eq, SolverOptions options, RootBackend backend, double& scale) {
    BackendOutcome out;
    out.backend = backend;
    options.roots.backend = backend;
    try {
        const SolutionSet set = solve_equation(eq, options);
        scale = std::max(scale, lambda_scale(set));
        out.infinite = !set.is_finite();
        if (set.is_finite())
            for (const auto& s : set.solutions()) out.solutions.push_back(s.matrix);
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

// Directional derivative of f at x along e.
Mat2 derivative_along(const MatrixEquation& eq, const std::vector<Mat2>& powers, const Mat2& e) {
    const int n = eq.degree();
    Mat2 out = Mat2::zero();
    for (int i = 1; i <= n; ++i) {
        Mat2 inner = Mat2::zero();
        for (int j = 0; j < i; ++j)
            inner = inner + powers[static_cast<std::size_t>(j)] * e * powers[static_cast<std::size_t>(i - 1 - j)];
        out = out + (i == n ? inner : eq.coeff(i) * inner);
    }
    return out;
}

// Full Newton steps to rounding level, returning the best iterate. Near a
// singular solution convergence is only linear and not monotone, and stopping
// at the acceptance bound would leave distinct-looking near misses.
Mat2 newton_refine(const MatrixEquation& eq, Mat2 x) {
    Mat2 best = x;
    double best_residual = eval_equation(eq, x).max_norm();
    const double limit = 10.0 * (1.0 + x.max_norm());
    for (int it = 0; it < 100; ++it) {
        const Mat2 fx = eval_equation(eq, x);
        if (fx.max_norm() <= residual_bound(eq, x, 1e-15)) break;
        std::vector<Mat2> powers{Mat2::identity()};
        for (int k = 1; k < eq.degree(); ++k) powers.push_back(powers.back() * x);
        Eigen::Matrix4cd jac;
        for (int col = 0; col < 4; ++col) {
            Mat2 e = Mat2::zero();
            e.e[static_cast<std::size_t>(col)] = 1.0;
            const Mat2 d = derivative_along(eq, powers, e);
            for (int row = 0; row < 4; ++row) jac(row, col) = d.e[static_cast<std::size_t>(row)];
        }
        Eigen::Vector4cd rhs;
        for (int row = 0; row < 4; ++row) rhs(row) = fx.e[static_cast<std::size_t>(row)];
        const Eigen::Vector4cd step = jac.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(rhs);
        if (!step.allFinite()) break;
        for (int k = 0; k < 4; ++k) x.e[static_cast<std::size_t>(k)] -= step(k);
        if (x.max_norm() > limit) break;
        const double r = eval_equation(eq, x).max_norm();
        if (r < best_residual) {
            best = x;
            best_residual = r;
        }
        if (step.cwiseAbs().maxCoeff() <= 1e-15 * (1.0 + x.max_norm())) break;
    }
    return best;
}

std::vector<Vec2> plane_directions(int count) {
    std::vector<Vec2> out{Vec2{{0.0, 1.0}}};
    for (int k = 0; out.size() < static_cast<std::size_t>(count); ++k) {
        // spiral through the plane so directions differ in modulus and phase
        const Complex z = std::polar(0.3 + 0.25 * k, 0.9 * k);
        out.push_back(normalized(Vec2{{1.0, z}}));
    }
    return out;
}

}  // namespace

std::string BackendOutcome::summary() const {
    if (error) return "error: " + *error;
    if (infinite) return "infinite";
    return std::to_string(solutions.size());
}

bool same_solutions(const std::vector<Mat2>& a, const std::vector<Mat2>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        bool matched = false;
        for (std::size_t j = 0; j < b.size() && !matched; ++j)
            if (!used[j] && (x - b[j]).max_norm() <= tol) used[j] = matched = true;
        if (!matched) return false;
    }
    return true;
}

CrossCheck count_cross_check(const MatrixEquation& eq, const SolverOptions& options) {
    CrossCheck out;
    double scale = 0.0;
    out.a = run_backend(eq, options, RootBackend::Aberth, scale);
    out.b = run_backend(eq, options, RootBackend::Companion, scale);
    if (out.a.error || out.b.error || out.a.infinite != out.b.infinite) return out;
    out.agree = out.a.infinite || same_solutions(out.a.solutions, out.b.solutions, 10.0 * options.dedupe_rel * (1.0 + scale));
    return out;
}

VerificationReport verify_solution_set(const MatrixEquation& eq, const SolutionSet& set, const VerifyOptions& options) {
    VerificationReport report;
    report.degree = eq.degree();
    report.max_coeff = eq.max_coeff();
    report.infinite = !set.is_finite();
    report.count_bound = max_solution_count(eq.degree());
    auto fail = [&](std::string reason) {
        report.pass = false;
        report.reasons.push_back(std::move(reason));
    };

    const PolyMat2 m = polymat_from_equation(eq);
    const Poly det = polymat_det(m);
    RootList roots;
    try {
        roots = critical_values(m, options.solver.roots);
    } catch (const Error& e) {
        fail(std::string("critical values unavailable: ") + e.what());
    }

    std::vector<Mat2> matrices;
    if (set.is_finite()) {
        for (const auto& s : set.solutions()) matrices.push_back(s.matrix);
        report.claimed_count = static_cast<std::int64_t>(matrices.size());
    } else {
        const auto& cert = set.certificate();
        for (const auto& mu : cert.samples) matrices.push_back(cert.at(mu));
        if (cert.direction.max_norm() <= options.dedupe_rel * (1.0 + cert.base.max_norm()))
            fail("certificate direction is zero");
    }

    for (const auto& x : matrices) {
        SolutionCheck c;
        c.matrix = x;
        c.eigenvalues = matrix_eigenvalues(x);
        c.residual = eval_equation(eq, x).max_norm();
        c.residual_bound = residual_bound(eq, x, options.residual_rel);
        for (const auto& mu : c.eigenvalues) {
            double gap = roots.empty() ? std::numeric_limits<double>::infinity() : std::abs(mu - roots.front().value);
            for (const auto& r : roots) gap = std::min(gap, std::abs(mu - r.value) / (1.0 + std::abs(r.value)));
            c.eigen_gap = std::max(c.eigen_gap, gap);
        }
        const Poly char_poly{x.det(), -x.trace(), 1.0};
        const double det_norm = std::max(det.max_abs_coeff(), 1e-300);
        c.divisor_remainder = divide(det, char_poly).remainder.max_abs_coeff() / det_norm;
        // the remainder cannot be computed more accurately than det M evaluates near the eigenvalues
        double radius = 0.0;
        for (const auto& mu : c.eigenvalues) radius = std::max(radius, std::abs(mu));
        double abs_det = 0.0;
        for (int i = det.degree(); i >= 0; --i) abs_det = abs_det * radius + std::abs(det[i]);
        c.divisor_bound = std::max(options.divisor_rel, 1e4 * std::numeric_limits<double>::epsilon() * abs_det / det_norm);
        report.checks.push_back(std::move(c));
    }
    std::stable_sort(report.checks.begin(), report.checks.end(), [](const SolutionCheck& a, const SolutionCheck& b) {
        return eigen_key(a.eigenvalues) < eigen_key(b.eigenvalues);
    });

    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        const std::string label = (report.infinite ? "sample " : "solution ") + std::to_string(i);
        if (!(c.residual <= c.residual_bound)) fail(label + ": residual above bound");
        if (!(c.eigen_gap <= options.eigen_rel)) fail(label + ": eigenvalue is not a critical value");
        if (!(c.divisor_remainder <= c.divisor_bound)) fail(label + ": char(X) does not divide det M");
    }

    const double dedupe = options.dedupe_rel * (1.0 + max_abs_value(roots));
    if (!report.infinite) {
        for (std::size_t i = 0; i < report.checks.size(); ++i)
            for (std::size_t j = i + 1; j < report.checks.size(); ++j) {
                const double d = (report.checks[i].matrix - report.checks[j].matrix).max_norm();
                if (d <= dedupe) report.duplicates.push_back({i, j, d});
            }
        if (!report.duplicates.empty()) fail("duplicate solutions");
        report.bound_ok = report.claimed_count <= report.count_bound;
        if (!report.bound_ok) fail("solution count exceeds C(2n, 2)");
    }

    if (options.cross_check) {
        report.cross_check = count_cross_check(eq, options.solver);
        const auto& cc = *report.cross_check;
        if (!cc.agree) {
            fail("backends disagree (a: " + cc.a.summary() + ", b: " + cc.b.summary() + ")");
        } else if (cc.a.infinite != report.infinite) {
            fail("classification differs from a fresh solve");
        } else if (!report.infinite && !same_solutions(matrices, cc.a.solutions, 10.0 * dedupe)) {
            fail("solutions differ from a fresh solve");
        }
    }
    return report;
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    out << std::setprecision(6);
    out << "equation: n=" << degree << " max_coeff=" << max_coeff << '\n';
    out << "classification: " << (infinite ? "infinite" : "finite") << '\n';
    if (!infinite) out << "claimed: " << claimed_count << " (bound " << count_bound << (bound_ok ? ", ok)" : ", exceeded)") << '\n';
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        out << (infinite ? "sample " : "solution ") << i << ": eigenvalues";
        for (const auto& [re, im] : eigen_key(c.eigenvalues)) out << " (" << re << ',' << im << ')';
        out << " residual " << c.residual << " / " << c.residual_bound << " eigen_gap " << c.eigen_gap << " divisor "
            << c.divisor_remainder << " / " << c.divisor_bound << '\n';
    }
    if (duplicates.empty()) {
        out << "duplicates: none\n";
    } else {
        for (const auto& d : duplicates)
            out << "duplicate: " << d.first << ' ' << d.second << " distance " << d.distance << '\n';
    }
    if (cross_check)
        out << "cross-check: a=" << cross_check->a.summary() << " b=" << cross_check->b.summary()
            << (cross_check->agree ? " agree" : " disagree") << '\n';
    out << "verdict: " << (pass ? "pass" : "fail") << '\n';
    for (const auto& r : reasons) out << "reason: " << r << '\n';
    return out.str();
}

ScanResult brute_force_scan(const MatrixEquation& eq, const ScanOptions& options) {
    const int n = eq.degree();
    if (n > 3) throw DomainError("brute_force_scan: n must be at most 3");
    const PolyMat2 m = polymat_from_equation(eq);
    RootOptions ro;
    ro.backend = RootBackend::Companion;
    const RootList roots = find_roots(polymat_det(m), ro);

    struct Critical {
        Complex value;
        std::vector<Vec2> vectors;
    };
    std::vector<Critical> critical;
    const auto grid = plane_directions(options.directions);
    for (const auto& r : roots) {
        const Mat2 value = polymat_eval(m, r.value);
        Eigen::Matrix2cd a;
        a << value(0, 0), value(0, 1), value(1, 0), value(1, 1);
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(a, Eigen::ComputeFullV);
        double scale = std::pow(std::abs(r.value), n);
        for (int i = 0; i < n; ++i) scale += eq.coeff(i).max_norm() * std::pow(std::abs(r.value), i);
        const double cut = 1e-8 * std::max(1.0, scale);
        Critical c{r.value, {}};
        if (svd.singularValues()(0) <= cut) {
            c.vectors = grid;
        } else {
            c.vectors.push_back(normalized(Vec2{{svd.matrixV()(0, 1), svd.matrixV()(1, 1)}}));
        }
        critical.push_back(std::move(c));
    }

    std::vector<Mat2> candidates;
    for (std::size_t i = 0; i < critical.size(); ++i) {
        const auto& ci = critical[i];
        candidates.push_back(Mat2::scalar(ci.value));
        for (const auto& u : ci.vectors) {
            const Vec2 w{{-u[1], u[0]}};
            for (double c : {0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0}) {
                const Complex size = c * (1.0 + std::abs(ci.value));
                candidates.push_back(Mat2::scalar(ci.value) +
                                     Mat2{{size * u[0] * w[0], size * u[0] * w[1], size * u[1] * w[0], size * u[1] * w[1]}});
            }
        }
        for (std::size_t j = i + 1; j < critical.size(); ++j)
            for (const auto& u : ci.vectors)
                for (const auto& v : critical[j].vectors) {
                    if (std::abs(cross(u, v)) <= 1e-6) continue;
                    const Mat2 basis = Mat2::from_columns(u, v);
                    candidates.push_back(basis * Mat2::diag(ci.value, critical[j].value) * inverse(basis));
                }
    }

    // residuals cannot tell a singular solution from points eps^(1/k) away,
    // so clusters merge at a much wider radius and keep their best member
    const double merge = options.merge_rel * (1.0 + max_abs_value(roots));
    ScanResult out;
    std::vector<double> residuals;
    for (const auto& start : candidates) {
        const Mat2 x = newton_refine(eq, start);
        const double r = eval_equation(eq, x).max_norm();
        if (!(r <= residual_bound(eq, x, options.residual_rel))) continue;
        auto same = std::find_if(out.solutions.begin(), out.solutions.end(),
                                 [&](const Mat2& s) { return (s - x).max_norm() <= merge; });
        if (same == out.solutions.end()) {
            out.solutions.push_back(x);
            residuals.push_back(r);
        } else if (const auto k = static_cast<std::size_t>(same - out.solutions.begin()); r < residuals[k]) {
            *same = x;
            residuals[k] = r;
        }
    }
    out.infinite = static_cast<std::int64_t>(out.solutions.size()) > max_solution_count(n);
    return out;
}

}  // namespace mateq
