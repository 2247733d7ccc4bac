#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "mateq/errors.hpp"
#include "mateq/scalar_poly.hpp"

namespace mateq {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Poly abs_coeff_poly(const Poly& p) {
    std::vector<Complex> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) out.emplace_back(std::abs(c));
    return Poly(std::move(out));
}

// |p(z)| within a few rounding errors of zero.
bool within_rounding(const Poly& abs_p, Complex z, Complex value) {
    const double bound = std::abs(abs_p(std::abs(z)));
    return std::isfinite(bound) && std::abs(value) <= 8.0 * kEps * bound;
}

std::vector<Complex> aberth(const Poly& p, int max_sweeps) {
    const int d = p.degree();
    const Poly dp = derivative(p);
    const Poly abs_p = abs_coeff_poly(p);
    // Fujiwara bound: every root lies within twice the largest |c_i / c_d|^(1 / (d - i))
    double radius = 0.0;
    for (int i = 0; i < d; ++i) {
        const double ratio = std::abs(p[i] / p.leading());
        radius = std::max(radius, std::pow(i == 0 ? ratio / 2.0 : ratio, 1.0 / (d - i)));
    }
    radius = std::max(2.0 * radius, std::numeric_limits<double>::min());

    std::vector<Complex> z(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / d + 0.4;
        // radial jitter breaks symmetric stalls on polynomials like t^d - c
        z[static_cast<std::size_t>(k)] = std::polar(radius * (1.0 + 0.01 * k / d), angle);
    }
    std::vector<bool> done(static_cast<std::size_t>(d), false);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool all_done = true;
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (done[k]) continue;
            const Complex pv = p(z[k]);
            if (within_rounding(abs_p, z[k], pv)) {
                done[k] = true;
                continue;
            }
            all_done = false;
            const Complex ratio = pv / dp(z[k]);
            Complex repulsion{};
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                // coincident iterates; nudge instead of dividing by zero
                z[k] += Complex(1e-8, 1e-8) * (1.0 + std::abs(z[k]));
                continue;
            }
            z[k] -= step;
            if (std::abs(step) <= kEps * std::abs(z[k])) done[k] = true;
        }
        if (all_done) return z;
    }
    for (std::size_t k = 0; k < z.size(); ++k)
        if (!done[k] && !within_rounding(abs_p, z[k], p(z[k])))
            throw NonConvergence("aberth: iteration budget exhausted");
    return z;
}

std::vector<Complex> companion(const Poly& p, int max_iterations) {
    const int d = p.degree();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) c(i, d - 1) = -p[i] / p.leading();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
    solver.setMaxIterations(max_iterations);
    solver.compute(c, false);
    if (solver.info() != Eigen::Success) throw NonConvergence("companion: QR iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Complex newton_polish(const Poly& f, const Poly& df, Complex z) {
    Complex fz = f(z);
    for (int it = 0; it < 5 && fz != Complex{}; ++it) {
        const Complex dfz = df(z);
        if (dfz == Complex{}) break;
        const Complex next = z - fz / dfz;
        const Complex fn = f(next);
        if (!(std::abs(fn) < std::abs(fz))) break;
        z = next;
        fz = fn;
    }
    return z;
}

struct Cluster {
    std::vector<Complex> members;

    Complex centroid() const {
        Complex s{};
        for (const auto& m : members) s += m;
        return s / static_cast<double>(members.size());
    }
};

// A k-fold root is a simple root of the (k-1)-th derivative, so Newton there
// converges quadratically even where the cluster members scatter.
Complex polished_centroid(const Poly& p, const Cluster& cl) {
    const int k = static_cast<int>(cl.members.size());
    if (k == 1) return cl.members.front();
    const Poly f = taylor_derivative(p, k - 1);
    return newton_polish(f, derivative(f), cl.centroid());
}

// Taylor coefficients 0..k-1 vanish at c, relative to the absolute-coefficient bound.
bool derivatives_vanish(const Poly& p, Complex c, int k, double tol) {
    for (int j = 0; j < k; ++j) {
        const Poly tj = taylor_derivative(p, j);
        const Poly bound = abs_coeff_poly(tj);
        if (std::abs(tj(c)) > tol * std::abs(bound(std::abs(c)))) return false;
    }
    return true;
}

// Radius by which rounding in the coefficients scatters a k-fold root at c.
double rounding_spread(const Poly& p, Complex c, int k) {
    const double tk = std::abs(taylor_derivative(p, k)(c));
    return std::pow(kEps * std::abs(abs_coeff_poly(p)(std::abs(c))) / tk, 1.0 / k);
}

bool derivative_nonzero(const Poly& p, Complex c, int k, double tol) {
    const Poly tk = taylor_derivative(p, k);
    return std::abs(tk(c)) > tol * std::abs(abs_coeff_poly(tk)(std::abs(c)));
}

RootList cluster_roots(const Poly& p, const std::vector<Complex>& roots, const RootOptions& opt) {
    double scale = 1.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));

    // unconditional merges below the clustering tolerance
    std::vector<std::size_t> parent(roots.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= opt.cluster_tol * scale) parent[find(i)] = find(j);

    std::vector<Cluster> clusters;
    {
        std::vector<std::ptrdiff_t> slot(roots.size(), -1);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const auto r = find(i);
            if (slot[r] < 0) {
                slot[r] = static_cast<std::ptrdiff_t>(clusters.size());
                clusters.emplace_back();
            }
            clusters[static_cast<std::size_t>(slot[r])].members.push_back(roots[i]);
        }
    }

    // wider merges need the derivative test to confirm a multiple root
    for (;;) {
        const std::size_t nc = clusters.size();
        bool merged = false;
        // candidate pairs sorted by centroid distance
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < nc; ++i)
            for (std::size_t j = i + 1; j < nc; ++j) {
                const double dist = std::abs(clusters[i].centroid() - clusters[j].centroid());
                if (dist <= opt.merge_radius * scale) pairs.emplace_back(dist, i, j);
            }
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [dist, i, j] : pairs) {
            Cluster combined = clusters[i];
            combined.members.insert(combined.members.end(), clusters[j].members.begin(), clusters[j].members.end());
            const int k = static_cast<int>(combined.members.size());
            if (derivatives_vanish(p, polished_centroid(p, combined), k, opt.derivative_tol)) {
                clusters[i] = std::move(combined);
                clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
                break;
            }
        }
        if (!merged) break;
    }

    // High multiplicities scatter their members by about eps^(1/k), well past
    // merge_radius. Such a cluster still sits far from every other root, so
    // grow groups around each seed and accept one that is isolated, no wider
    // than rounding explains, and passes the derivative test.
    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t seed = 0; seed < clusters.size() && !merged; ++seed) {
            const Complex origin = clusters[seed].centroid();
            std::vector<std::size_t> order;
            for (std::size_t j = 0; j < clusters.size(); ++j)
                if (j != seed) order.push_back(j);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return std::abs(clusters[a].centroid() - origin) < std::abs(clusters[b].centroid() - origin);
            });
            Cluster group = clusters[seed];
            for (std::size_t used = 0; used < order.size(); ++used) {
                const auto& next = clusters[order[used]].members;
                group.members.insert(group.members.end(), next.begin(), next.end());
                const Complex g = group.centroid();
                double spread = 0.0;
                for (const auto& z : group.members) spread = std::max(spread, std::abs(z - g));
                double gap = std::numeric_limits<double>::infinity();
                for (std::size_t rest = used + 1; rest < order.size(); ++rest)
                    for (const auto& z : clusters[order[rest]].members) gap = std::min(gap, std::abs(z - g));
                if (gap <= opt.isolation_ratio * spread) continue;
                const int k = static_cast<int>(group.members.size());
                const Complex c = polished_centroid(p, group);
                if (spread > opt.isolation_ratio * rounding_spread(p, c, k)) continue;
                if (!derivatives_vanish(p, c, k, opt.derivative_tol)) continue;
                std::vector<std::size_t> gone(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(used) + 1);
                std::sort(gone.rbegin(), gone.rend());
                clusters[seed] = std::move(group);
                for (std::size_t j : gone) clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
                break;
            }
        }
    }

    RootList out;
    out.reserve(clusters.size());
    for (const auto& cl : clusters) {
        const int k = static_cast<int>(cl.members.size());
        const Complex c = polished_centroid(p, cl);
        Root r{c, k, false};
        if (k > 1)
            r.suspect = !derivatives_vanish(p, c, k, opt.derivative_tol) ||
                        !derivative_nonzero(p, c, k, opt.derivative_tol);
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<Complex> raw_roots(const Poly& p, const RootOptions& options) {
    if (p.degree() < 1) throw DomainError("find_roots: polynomial must have degree >= 1");
    for (const auto& c : p.coeffs())
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("find_roots: non-finite coefficient");

    // exact zero roots come off the bottom without iteration
    int zeros = 0;
    while (p[zeros] == Complex{}) ++zeros;
    std::vector<Complex> out(static_cast<std::size_t>(zeros), Complex{});
    std::vector<Complex> rest(p.coeffs().begin() + zeros, p.coeffs().end());
    const Poly q(std::move(rest));
    if (q.degree() == 0) return out;
    if (q.degree() == 1) {
        out.push_back(-q[0] / q[1]);
        return out;
    }
    auto found = options.backend == RootBackend::Aberth ? aberth(q, options.aberth_sweeps)
                                                        : companion(q, options.companion_iterations);
    // members of a multiple-root cluster are already at rounding level; moving
    // them one by one would spoil the cluster centroid. An isolated root is
    // polished even there, since the absolute-coefficient bound overstates
    // the evaluation error when the coefficients cancel.
    const Poly dq = derivative(q);
    const Poly abs_q = abs_coeff_poly(q);
    for (std::size_t k = 0; k < found.size(); ++k) {
        const Complex z = found[k];
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < found.size(); ++j)
            if (j != k) nearest = std::min(nearest, std::abs(found[j] - z));
        const double step = std::abs(q(z) / dq(z));
        const bool isolated = std::isfinite(step) && 10.0 * step < nearest;
        out.push_back(isolated || !within_rounding(abs_q, z, q(z)) ? newton_polish(q, dq, z) : z);
    }
    return out;
}

RootList find_roots(const Poly& p, const RootOptions& options) {
    const auto all = raw_roots(p, options);
    int zeros = 0;
    while (p[zeros] == Complex{}) ++zeros;

    RootList out;
    if (zeros > 0) out.push_back({Complex{}, zeros, false});
    if (static_cast<int>(all.size()) > zeros) {
        std::vector<Complex> rest(p.coeffs().begin() + zeros, p.coeffs().end());
        const Poly q(std::move(rest));
        const std::vector<Complex> nonzero(all.begin() + zeros, all.end());
        auto clustered = cluster_roots(q, nonzero, options);
        out.insert(out.end(), clustered.begin(), clustered.end());
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

}  // namespace mateq
