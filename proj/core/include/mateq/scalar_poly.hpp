#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mateq {

using Complex = std::complex<double>;

/// Dense univariate polynomial over complex scalars, coefficients in
/// ascending power. Exact trailing zeros are stripped on construction, so the
/// zero polynomial is the empty coefficient list and has degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Complex> coeffs);
    Poly(std::initializer_list<Complex> coeffs);

    static Poly constant(Complex c);
    static Poly monomial(int power, Complex c = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    std::span<const Complex> coeffs() const { return coeffs_; }

    /// Coefficient of t^k; zero past the degree.
    Complex operator[](int k) const;
    Complex leading() const;

    /// Horner evaluation.
    Complex operator()(Complex t) const;

    /// Largest coefficient magnitude (0 for the zero polynomial).
    double max_abs_coeff() const;

    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Poly& other);

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void canonicalize();

    std::vector<Complex> coeffs_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Complex s, const Poly& p);

Poly derivative(const Poly& p);

/// k-th derivative divided by k!, i.e. the k-th Taylor coefficient map.
Poly taylor_derivative(const Poly& p, int k);

struct PolyDivision {
    Poly quotient;
    Poly remainder;
};

/// Long division by a divisor with nonzero leading coefficient.
PolyDivision divide(const Poly& numerator, const Poly& divisor);

struct Root {
    Complex value;
    int multiplicity = 1;
    /// Cluster size and derivative test disagreed.
    bool suspect = false;
};

using RootList = std::vector<Root>;

/// Monic polynomial with exactly the given roots.
Poly expand_from_roots(std::span<const Root> roots);

enum class RootBackend {
    Aberth,     ///< simultaneous iteration on the whole polynomial ("a")
    Companion,  ///< eigenvalues of the companion matrix ("b")
};

struct RootOptions {
    RootBackend backend = RootBackend::Aberth;
    /// Roots closer than this (relative to max(1, max |root|)) always merge.
    double cluster_tol = 1e-6;
    /// Wider clusters merge only when derivatives vanish at the centroid.
    double merge_radius = 1e-2;
    double derivative_tol = 1e-9;
    /// A wider group also merges when every other root is farther from its
    /// centroid than this many times the group's own spread, and that spread
    /// is within this factor of what rounding predicts for its multiplicity.
    double isolation_ratio = 3.0;
    int aberth_sweeps = 200;
    int companion_iterations = 500;
};

/// All roots with multiplicities. Throws NonConvergence when the backend
/// exhausts its budget and DomainError for constant input.
RootList find_roots(const Poly& p, const RootOptions& options = {});

/// Unclustered roots straight from a backend, each Newton-polished.
std::vector<Complex> raw_roots(const Poly& p, const RootOptions& options = {});

/// Row-pivoted Gaussian elimination. Throws SingularSystem when a pivot is
/// below pivot_tol times the infinity norm of the matrix.
Eigen::VectorXcd dense_solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b,
                             double pivot_tol = 1e-14);

}  // namespace mateq
