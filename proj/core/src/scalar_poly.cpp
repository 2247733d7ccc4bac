#include "mateq/scalar_poly.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mateq/errors.hpp"

namespace mateq {

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { canonicalize(); }

Poly::Poly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { canonicalize(); }

Poly Poly::constant(Complex c) { return Poly(std::vector<Complex>{c}); }

Poly Poly::monomial(int power, Complex c) {
    std::vector<Complex> coeffs(static_cast<std::size_t>(power) + 1, Complex{});
    coeffs.back() = c;
    return Poly(std::move(coeffs));
}

void Poly::canonicalize() {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex Poly::operator[](int k) const {
    if (k < 0 || k > degree()) return {};
    return coeffs_[static_cast<std::size_t>(k)];
}

Complex Poly::leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

Complex Poly::operator()(Complex t) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

Poly& Poly::operator+=(const Poly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    canonicalize();
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    canonicalize();
    return *this;
}

Poly& Poly::operator*=(const Poly& other) {
    *this = *this * other;
    return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }

Poly operator-(Poly a, const Poly& b) { return a -= b; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    std::vector<Complex> out(ac.size() + bc.size() - 1, Complex{});
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == Complex{}) continue;
        for (std::size_t j = 0; j < bc.size(); ++j) out[i + j] += ac[i] * bc[j];
    }
    return Poly(std::move(out));
}

Poly operator*(Complex s, const Poly& p) {
    std::vector<Complex> out(p.coeffs().begin(), p.coeffs().end());
    for (auto& c : out) c *= s;
    return Poly(std::move(out));
}

Poly derivative(const Poly& p) {
    if (p.degree() < 1) return {};
    std::vector<Complex> out(static_cast<std::size_t>(p.degree()));
    for (int k = 1; k <= p.degree(); ++k) out[static_cast<std::size_t>(k - 1)] = p[k] * static_cast<double>(k);
    return Poly(std::move(out));
}

Poly taylor_derivative(const Poly& p, int k) {
    if (k == 0) return p;
    if (p.degree() < k) return {};
    std::vector<Complex> out(static_cast<std::size_t>(p.degree() - k + 1));
    for (int i = k; i <= p.degree(); ++i) {
        // binomial(i, k) computed in floating point; degrees here stay small
        double binom = 1.0;
        for (int j = 1; j <= k; ++j) binom = binom * static_cast<double>(i - k + j) / j;
        out[static_cast<std::size_t>(i - k)] = p[i] * binom;
    }
    return Poly(std::move(out));
}

PolyDivision divide(const Poly& numerator, const Poly& divisor) {
    if (divisor.is_zero()) throw DomainError("polynomial division by zero");
    const int dd = divisor.degree();
    const int nd = numerator.degree();
    if (nd < dd) return {Poly{}, numerator};
    std::vector<Complex> rem(numerator.coeffs().begin(), numerator.coeffs().end());
    std::vector<Complex> quot(static_cast<std::size_t>(nd - dd + 1), Complex{});
    const Complex lead = divisor.leading();
    for (int k = nd - dd; k >= 0; --k) {
        const Complex q = rem[static_cast<std::size_t>(k + dd)] / lead;
        quot[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * divisor[j];
        rem[static_cast<std::size_t>(k + dd)] = Complex{};
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly expand_from_roots(std::span<const Root> roots) {
    Poly out = Poly::constant(1.0);
    for (const auto& r : roots) {
        const Poly factor{-r.value, Complex{1.0}};
        for (int k = 0; k < r.multiplicity; ++k) out *= factor;
    }
    return out;
}

Eigen::VectorXcd dense_solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b, double pivot_tol) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.size() != n) throw DomainError("dense_solve: dimension mismatch");
    Eigen::MatrixXcd m = a;
    Eigen::VectorXcd rhs = b;
    double norm_inf = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) norm_inf = std::max(norm_inf, m.row(i).cwiseAbs().sum());
    const double threshold = pivot_tol * norm_inf;

    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        for (Eigen::Index i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (!(std::abs(m(piv, k)) > threshold))
            throw SingularSystem("dense_solve: pivot below tolerance in column " + std::to_string(k));
        if (piv != k) {
            m.row(k).swap(m.row(piv));
            std::swap(rhs(k), rhs(piv));
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const Complex factor = m(i, k) / m(k, k);
            if (factor == Complex{}) continue;
            m.row(i).tail(n - k) -= factor * m.row(k).tail(n - k);
            rhs(i) -= factor * rhs(k);
        }
    }
    Eigen::VectorXcd x(n);
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        Complex acc = rhs(k);
        for (Eigen::Index j = k + 1; j < n; ++j) acc -= m(k, j) * x(j);
        x(k) = acc / m(k, k);
    }
    return x;
}

}  // namespace mateq
