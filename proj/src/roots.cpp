#include "pdnz/ratfun.hpp"

#include "pdnz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pdnz {

namespace {

using CReal = std::complex<Real>;

constexpr int kMaxIterations = 500;
constexpr Real kStepTolerance = 1e-13L;

struct HornerResult {
    CReal value;
    CReal derivative;
    Real abs_bound;  // sum |a_k| |z|^k, scale of the rounding error
};

HornerResult horner(const std::vector<Real>& c, CReal z) {
    CReal p = 0;
    CReal dp = 0;
    Real bound = 0;
    const Real az = std::abs(z);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
        bound = bound * az + std::fabs(*it);
    }
    return {p, dp, bound};
}

// Aberth-Ehrlich simultaneous iteration on a polynomial with nonzero constant term.
std::vector<CReal> aberth(const std::vector<Real>& c, int& iterations, bool& converged) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<CReal> z(static_cast<std::size_t>(n));
    if (n == 1) {
        z[0] = -c[0] / c[1];
        iterations = 0;
        converged = true;
        return z;
    }

    const Real radius = std::pow(std::fabs(c[0] / c[static_cast<std::size_t>(n)]), Real{1} / n);
    const Real golden = std::numbers::pi_v<Real> * (3 - std::sqrt(Real{5}));
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, Real{0.4L} + k * golden);

    const Real rounding = 4 * (n + 1) * std::numeric_limits<Real>::epsilon();
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    converged = false;
    iterations = 0;
    for (int it = 1; it <= kMaxIterations && !converged; ++it) {
        iterations = it;
        converged = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (done[i]) continue;
            const auto h = horner(c, z[i]);
            if (std::abs(h.value) <= rounding * h.abs_bound) {
                done[i] = true;
                continue;
            }
            const CReal ratio = h.value / h.derivative;
            CReal repulsion = 0;
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != i) repulsion += Real{1} / (z[i] - z[j]);
            const CReal step = ratio / (Real{1} - ratio * repulsion);
            z[i] -= step;
            if (std::abs(step) <= kStepTolerance * std::abs(z[i]))
                done[i] = true;
            else
                converged = false;
        }
    }
    if (!converged) converged = std::all_of(done.begin(), done.end(), [](bool d) { return d; });
    return z;
}

// Real polynomials have conjugate-symmetric root sets; enforce it exactly.
void symmetrize(std::vector<CReal>& z) {
    std::vector<bool> used(z.size(), false);
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const Real mag = std::abs(z[i]);
        if (std::fabs(z[i].imag()) <= 1e-9L * mag) {
            z[i] = z[i].real();
            continue;
        }
        std::size_t best = z.size();
        Real best_dist = std::numeric_limits<Real>::infinity();
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (used[j]) continue;
            const Real d = std::abs(z[j] - std::conj(z[i]));
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        if (best == z.size() || best_dist > 1e-6L * mag) continue;
        const CReal mid = (z[i] + std::conj(z[best])) / Real{2};
        z[i] = mid;
        z[best] = std::conj(mid);
        used[best] = true;
    }
}

}  // namespace

RootSet rf_roots(const Polynomial& p, double scale_hint_hz) {
    if (p.degree() < 1) throw InvalidArgument("root finding needs a polynomial of degree >= 1");
    if (!(scale_hint_hz > 0) || !std::isfinite(scale_hint_hz)) throw InvalidArgument("scale hint must be positive");

    const Real omega_c = 2 * std::numbers::pi_v<Real> * static_cast<Real>(scale_hint_hz);
    const Polynomial scaled = p.rescaled(omega_c);

    RootSet out;
    out.scale = static_cast<double>(omega_c);

    const int zeros_at_origin = scaled.low_order_zeros();
    std::vector<Real> reduced(scaled.coeffs().begin() + zeros_at_origin, scaled.coeffs().end());
    const Real norm = Polynomial(reduced).max_abs_coeff();
    for (auto& c : reduced) c /= norm;

    std::vector<CReal> z(static_cast<std::size_t>(zeros_at_origin), CReal{0});
    out.converged = true;
    if (reduced.size() > 1) {
        bool converged = false;
        auto found = aberth(reduced, out.iterations, converged);
        out.converged = converged;
        symmetrize(found);
        z.insert(z.end(), found.begin(), found.end());
    }

    std::sort(z.begin(), z.end(), [](const CReal& a, const CReal& b) {
        const Real ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma < mb;
        return a.imag() < b.imag();
    });

    for (const auto& r : z) {
        out.roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
        out.residual.push_back(static_cast<double>(std::abs(scaled(r))));
    }
    return out;
}

std::vector<CancelledPair> find_cancellations(const RootSet& zeros, const RootSet& poles, double rel_tol) {
    std::vector<CancelledPair> out;
    std::vector<bool> taken(zeros.roots.size(), false);
    for (std::size_t pi = 0; pi < poles.roots.size(); ++pi) {
        const auto pole = poles.unscaled(pi);
        const double mag = std::abs(pole);
        std::size_t best = zeros.roots.size();
        double best_rel = std::numeric_limits<double>::infinity();
        for (std::size_t zi = 0; zi < zeros.roots.size(); ++zi) {
            if (taken[zi]) continue;
            const double d = std::abs(zeros.unscaled(zi) - pole);
            const double rel = mag > 0 ? d / mag : (d == 0 ? 0.0 : std::numeric_limits<double>::infinity());
            if (rel < best_rel) {
                best_rel = rel;
                best = zi;
            }
        }
        if (best < zeros.roots.size() && best_rel <= rel_tol) {
            taken[best] = true;
            out.push_back({best, pi, best_rel});
        }
    }
    return out;
}

}  // namespace pdnz
