#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bachelier {

namespace detail {

// Regularized lower/upper incomplete gamma pair (P, Q), P + Q = 1 by
// construction: the branch that converges fastest is computed directly and
// the other obtained by complement.
inline std::pair<double, double> gamma_pq(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("gamma_pq: shape must be positive");
    if (x < 0.0) throw std::invalid_argument("gamma_pq: x must be >= 0");
    if (x == 0.0) return {0.0, 1.0};
    if (x < a + 1.0) {
        // series for P
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-17) {
                const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
                return {p, 1.0 - p};
            }
        }
        throw std::runtime_error("gamma_pq: series did not converge");
    }
    // continued fraction for Q (modified Lentz)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
            return {1.0 - q, q};
        }
    }
    throw std::runtime_error("gamma_pq: continued fraction did not converge");
}

}  // namespace detail

/// Noncentral chi-squared parameters; fractional degrees of freedom allowed.
struct Chi2NcParams {
    double dof = 1.0;            // r > 0
    double noncentrality = 0.0;  // x0 >= 0

    void validate() const {
        if (!(dof > 0.0)) throw std::invalid_argument("Chi2NcParams: dof must be > 0");
        if (noncentrality < 0.0)
            throw std::invalid_argument("Chi2NcParams: noncentrality must be >= 0");
    }
};

namespace detail {

// Poisson mixture of central chi-squared terms, summed outward from the modal
// Poisson index in both directions. Returns (cdf, sf); each side of the pair
// is accumulated from directly computed tail terms, never as 1 - other.
inline std::pair<double, double> chi2nc_both(double x, const Chi2NcParams& params) {
    params.validate();
    if (x < 0.0) throw std::invalid_argument("chi2nc: x must be >= 0");
    if (x == 0.0) return {0.0, 1.0};

    const double a = 0.5 * params.dof;
    const double y = 0.5 * x;
    const double lambda = 0.5 * params.noncentrality;
    if (lambda == 0.0) return gamma_pq(a, y);

    constexpr int kMaxIter = 10000;
    constexpr double kTermTol = 1e-16;

    const long mode = static_cast<long>(lambda);
    // Poisson weight and gamma tail pair at the mode
    const double log_w0 = -lambda + mode * std::log(lambda) - std::lgamma(mode + 1.0);
    const double w0 = std::exp(log_w0);
    auto [p0, q0] = gamma_pq(a + mode, y);
    // gamma density term t_k = y^{a+k} e^{-y} / Gamma(a+k+1) links neighbours
    const double t0 = std::exp((a + mode) * std::log(y) - y - std::lgamma(a + mode + 1.0));

    double cdf = w0 * p0;
    double sf = w0 * q0;

    // upward: k = mode+1, mode+2, ...  (weights decay once past the mode)
    {
        double w = w0, p = p0, q = q0, t = t0;
        long k = mode;
        for (int i = 0;; ++i) {
            w *= lambda / (k + 1.0);
            p -= t;
            q += t;
            if (p < 0.0) p = 0.0;
            ++k;
            t *= y / (a + k);
            cdf += w * p;
            sf += w * q;
            if (w < kTermTol && k > lambda) break;
            if (i + 1 == kMaxIter)
                throw std::runtime_error("chi2nc: series did not converge (upward)");
        }
    }
    // downward: k = mode-1, ..., 0
    {
        double w = w0, p = p0, q = q0, t = t0;
        long iter = 0;
        for (long k = mode; k > 0; --k) {
            w *= k / lambda;
            t *= (a + k) / y;
            p += t;
            q -= t;
            if (q < 0.0) q = 0.0;
            cdf += w * p;
            sf += w * q;
            if (w < kTermTol) break;
            if (++iter >= kMaxIter)
                throw std::runtime_error("chi2nc: series did not converge (downward)");
        }
    }
    return {std::min(cdf, 1.0), std::min(sf, 1.0)};
}

}  // namespace detail

/// Left-tail CDF of the noncentral chi-squared distribution.
inline double chi2nc_cdf(double x, const Chi2NcParams& params) {
    return detail::chi2nc_both(x, params).first;
}

/// Right-tail (survival) CDF, accumulated directly rather than as 1 - cdf.
inline double chi2nc_sf(double x, const Chi2NcParams& params) {
    return detail::chi2nc_both(x, params).second;
}

}  // namespace bachelier
