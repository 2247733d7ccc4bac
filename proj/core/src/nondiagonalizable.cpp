// Search for solutions X = lambda I + N with N a nonzero nilpotent.
//
// Since N^2 = 0, X^k = lambda^k I + k lambda^(k-1) N and therefore
// f(lambda I + N) = M(lambda) + M'(lambda) N. The candidates are the points of
// the affine space {N : M'(lambda) N = -M(lambda), tr N = 0} on which the
// quadratic det N vanishes.

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/SVD>

#include "mateq/errors.hpp"
#include "mateq/solver.hpp"

namespace mateq {
namespace {

// det(A + B) = det A + mixed(A, B) + det B
Complex mixed(const Mat2& a, const Mat2& b) {
    return a(0, 0) * b(1, 1) + a(1, 1) * b(0, 0) - a(0, 1) * b(1, 0) - a(1, 0) * b(0, 1);
}

// x is column-major vec(N)
Mat2 unvec(const Eigen::VectorXcd& x) { return {{x(0), x(2), x(1), x(3)}}; }

struct AffineNilpotentSpace {
    Mat2 particular;
    std::vector<Mat2> directions;
};

std::optional<AffineNilpotentSpace> solve_linear_part(const Mat2& value, const Mat2& slope, double ref, double tol) {
    Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(5, 4);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(5);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < 2; ++k) lhs(2 * j + i, 2 * j + k) = slope(i, k);
            rhs(2 * j + i) = -value(i, j);
        }
    lhs(4, 0) = ref;
    lhs(4, 3) = ref;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lhs, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > tol * ref) ++rank;

    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(4);
    for (int i = 0; i < rank; ++i)
        x += (svd.matrixU().col(i).dot(rhs) / sigma(i)) * svd.matrixV().col(i);
    const double residual = (lhs * x - rhs).cwiseAbs().maxCoeff();
    if (residual > tol * ref * (1.0 + x.cwiseAbs().maxCoeff())) return std::nullopt;

    AffineNilpotentSpace out;
    out.particular = unvec(x);
    for (int i = rank; i < 4; ++i) out.directions.push_back(unvec(svd.matrixV().col(i)));
    return out;
}

struct LineRoots {
    bool identically_zero = false;
    std::vector<Complex> roots;
};

// Roots of a t^2 + b t + c, with coefficients below tol * scale treated as zero.
LineRoots quadratic_roots(Complex a, Complex b, Complex c, double scale, double tol) {
    const double cut = tol * scale;
    LineRoots out;
    if (std::abs(a) <= cut) {
        if (std::abs(b) <= cut) {
            out.identically_zero = std::abs(c) <= cut;
            return out;
        }
        out.roots.push_back(-c / b);
        return out;
    }
    const Complex disc = std::sqrt(b * b - 4.0 * a * c);
    // choose the sign that avoids cancellation
    const Complex q = std::real(std::conj(b) * disc) >= 0.0 ? -0.5 * (b + disc) : -0.5 * (b - disc);
    if (q == Complex{}) {
        out.roots.push_back(Complex{});
        return out;
    }
    out.roots.push_back(q / a);
    out.roots.push_back(c / q);
    return out;
}

class CandidateCollector {
public:
    CandidateCollector(const MatrixEquation& eq, Complex lambda, const SolverOptions& opt)
        : eq_(eq), lambda_(lambda), opt_(opt), zero_cut_(opt.rank_tol * std::max(1.0, std::abs(lambda))),
          distinct_cut_(opt.dedupe_rel * (1.0 + std::abs(lambda))) {}

    void offer(const Mat2& n) {
        const double size = n.max_norm();
        if (size <= zero_cut_) return;
        const double scale = 1.0 + size;
        if (std::abs(n.trace()) > opt_.rank_tol * scale || std::abs(n.det()) > opt_.rank_tol * scale * scale) return;
        const Mat2 x = Mat2::scalar(lambda_) + n;
        if (eval_equation(eq_, x).max_norm() > residual_bound(eq_, x, opt_.residual_rel)) return;
        for (const auto& seen : found_)
            if ((seen - n).max_norm() <= distinct_cut_) return;
        found_.push_back(n);
    }

    // Every point of the line P + t Q with det vanishing along it.
    void offer_line(const Mat2& p, const Mat2& q) {
        const double scale = std::pow(1.0 + p.max_norm() + q.max_norm(), 2);
        const auto lr = quadratic_roots(q.det(), mixed(p, q), p.det(), scale, opt_.rank_tol);
        if (lr.identically_zero) {
            for (Complex t : {Complex{1.0}, Complex{2.0}, Complex{-1.0}}) offer(p + t * q);
            return;
        }
        for (Complex t : lr.roots) offer(p + t * q);
    }

    std::size_t count() const { return found_.size(); }
    const std::vector<Mat2>& found() const { return found_; }

private:
    const MatrixEquation& eq_;
    Complex lambda_;
    const SolverOptions& opt_;
    double zero_cut_;
    double distinct_cut_;
    std::vector<Mat2> found_;
};

}  // namespace

NondiagonalResult find_nondiagonalizable(const MatrixEquation& eq, const CriticalDatum& datum,
                                         const SolverOptions& opt) {
    if (datum.multiplicity < 2) return std::monostate{};
    const PolyMat2 m = polymat_from_equation(eq);
    const Complex lambda = datum.value;
    const Mat2 value = polymat_eval(m, lambda);
    const Mat2 slope = polymat_eval(polymat_derivative(m), lambda);
    const double ref = std::max({1.0, value.max_norm(), slope.max_norm()});

    const auto space = solve_linear_part(value, slope, ref, opt.rank_tol);
    if (!space) return std::monostate{};

    CandidateCollector collector(eq, lambda, opt);
    const auto& dirs = space->directions;
    if (dirs.empty()) {
        collector.offer(space->particular);
    } else if (dirs.size() == 1) {
        collector.offer_line(space->particular, dirs[0]);
    } else {
        // det restricted to a higher-dimensional affine space is either
        // constant or vanishes on a hypersurface; sample parallel lines
        static constexpr double kOffsets[] = {0.0, 0.37, -0.61, 1.13};
        for (std::size_t k = 0; k < dirs.size() && collector.count() < 2; ++k)
            for (std::size_t l = 0; l < dirs.size() && collector.count() < 2; ++l) {
                if (l == k) continue;
                for (double c : kOffsets) {
                    collector.offer_line(space->particular + Complex{c} * dirs[l], dirs[k]);
                    if (collector.count() >= 2) break;
                }
            }
    }

    if (collector.count() == 0) return std::monostate{};
    if (collector.count() == 1) {
        Solution s;
        s.matrix = Mat2::scalar(lambda) + collector.found()[0];
        s.kind = SolutionKind::non_diagonalizable;
        s.eigenvalues = {lambda};
        s.eigenvectors = {kernel_direction(collector.found()[0])};
        return s;
    }

    // two distinct nilpotent solutions Y, Z put the whole line mu Y + (1 - mu) Z in the solution set
    InfiniteCertificate cert;
    cert.reason = datum.space_dim == 2 && std::abs(lambda) > opt.rank_tol ? InfiniteReason::scalar_plus_two_dim
                                                                           : InfiniteReason::nilpotent_affine_family;
    cert.base = Mat2::scalar(lambda) + collector.found()[1];
    cert.direction = collector.found()[0] - collector.found()[1];
    if (!verify_certificate(eq, cert, opt.residual_rel))
        throw InternalInconsistency("nilpotent family failed its residual check");
    return cert;
}

}  // namespace mateq
