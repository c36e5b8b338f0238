#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "bachelier/market.hpp"
#include "bachelier/normal.hpp"
#include "bachelier/vanilla.hpp"

namespace bachelier {

/// Rational approximation coefficients for the Bachelier inversion factor
/// h(eta) = sqrt(eta) * (sum a_k eta^k) / (1 + sum b_k eta^k).
inline constexpr std::array<double, 8> kIvolNumCoeffs = {
    3.994961687345134e-1, 2.100960795068497e+1, 4.980340217855084e+1, 5.988761102690991e+2,
    1.848489695437094e+3, 6.106322407867059e+3, 2.493415285349361e+4, 1.266458051348246e+4,
};
inline constexpr std::array<double, 9> kIvolDenCoeffs = {
    4.990534153589422e+1, 3.093573936743112e+1, 1.495105008310999e+3,
    1.323614537899738e+3, 1.598919697679745e+4, 2.392008891720782e+4,
    3.608817108375034e+3, -2.067719486400926e+2, 1.174240599306013e+1,
};

inline double h_of_eta(double eta) {
    double num = 0.0;
    for (int i = 7; i >= 0; --i) num = num * eta + kIvolNumCoeffs[i];
    double den = 0.0;
    for (int i = 8; i >= 0; --i) den = den * eta + kIvolDenCoeffs[i];
    return std::sqrt(eta) * num / (1.0 + eta * den);
}

namespace detail {

// eta = v / atanh(v) given both the straddle moneyness v and its complement
// u = 1 - v; keeping u explicit preserves precision as v -> 1.
inline double eta_from_ratio(double v, double u) {
    if (v <= 1e-3) {
        const double v2 = v * v;
        return 1.0 / (1.0 + v2 * (1.0 / 3.0 + v2 * (1.0 / 5.0 + v2 * (1.0 / 7.0 + v2 / 9.0))));
    }
    return v / (0.5 * std::log1p(2.0 * v / u));
}

}  // namespace detail

/// Straddle moneyness ratio v -> eta = v/atanh(v), with the Taylor branch
/// 1/(1 + v^2/3 + v^4/5 + v^6/7 + v^8/9) near the removable singularity.
inline double eta_of_v(double v) {
    if (v < 0.0 || v >= 1.0) throw std::invalid_argument("eta_of_v: v must lie in [0,1)");
    return detail::eta_from_ratio(v, 1.0 - v);
}

namespace detail {

// Core inversion from the straddle decomposition: time value tv > 0 and the
// straddle intrinsic |F0 - K|. One Newton polish restores full accuracy in
// the far wings where the rational fit degrades.
inline double bachelier_ivol_core(double time_value, double abs_fk, double expiry) {
    if (!(expiry > 0.0)) throw std::invalid_argument("bachelier_ivol: expiry must be > 0");
    if (!(time_value > 0.0))
        throw std::invalid_argument("bachelier_ivol: price does not exceed intrinsic value");
    const double straddle = abs_fk + 2.0 * time_value;
    const double v = abs_fk / straddle;
    const double u = 2.0 * time_value / straddle;  // 1 - v without cancellation
    const double eta = eta_from_ratio(v, u);
    double sigma = std::sqrt(M_PI / (2.0 * expiry)) * straddle * h_of_eta(eta);
    if (!(sigma > 0.0)) return sigma;
    const double sqt = std::sqrt(expiry);
    const double d = abs_fk / (sigma * sqt);
    if (d > 4.0) {
        // one Newton step on the OTM time value; vega = sqrt(T) n(d)
        const double vega = sqt * norm_pdf(d);
        if (vega > 0.0) {
            const double model_tv = sigma * sqt * norm_pdf(d) - abs_fk * norm_cdf(-d);
            sigma += (time_value - model_tv) / vega;
        }
    }
    return sigma;
}

}  // namespace detail

/// Implied Bachelier volatility from an undiscounted option price.
/// Requires price strictly above intrinsic (sigma = 0 has no Bachelier vol).
inline double bachelier_ivol(double price, OptionKind kind, double strike, double forward,
                             double expiry) {
    const double time_value = price - intrinsic_value(kind, strike, forward);
    return detail::bachelier_ivol_core(time_value, std::abs(forward - strike), expiry);
}

/// Same inversion fed with a directly quoted straddle price.
inline double bachelier_ivol_straddle(double straddle_price, double strike, double forward,
                                      double expiry) {
    const double time_value = 0.5 * (straddle_price - std::abs(forward - strike));
    return detail::bachelier_ivol_core(time_value, std::abs(forward - strike), expiry);
}

/// Implied Black-76 volatility: safeguarded Newton with a bisection bracket,
/// seeded ATM by the closed form and elsewhere through the Bachelier
/// inversion. Converges to |price(sigma) - price| <= 1e-12 * max(F0, price).
inline double black_ivol(double price, OptionKind kind, double strike, double forward,
                         double expiry) {
    if (!(strike > 0.0) || !(forward > 0.0))
        throw std::invalid_argument("black_ivol: strike and forward must be > 0");
    if (!(expiry > 0.0)) throw std::invalid_argument("black_ivol: expiry must be > 0");
    const double intrinsic = intrinsic_value(kind, strike, forward);
    const double cap = kind == OptionKind::Call ? forward : strike;
    if (!(price > intrinsic))
        throw std::invalid_argument("black_ivol: price does not exceed intrinsic value");
    if (!(price < cap)) throw std::invalid_argument("black_ivol: price exceeds attainable range");

    const double tol = 1e-12 * std::max(forward, price);
    double sigma;
    if (strike == forward) {
        sigma = 2.0 / std::sqrt(expiry) * norm_quantile(0.5 * (price / forward + 1.0));
    } else {
        const double sigma_n = bachelier_ivol(price, kind, strike, forward, expiry);
        const double k = strike / forward;
        const double lk = std::log(k);
        sigma = sigma_n / (forward * std::sqrt(k)) *
                (1.0 + sigma_n * sigma_n * expiry / (24.0 * k * forward * forward)) /
                (1.0 + lk * lk / 24.0);
    }
    double lo = 1e-12, hi = std::max(2.0 * sigma, 1.0);
    while (price_black(kind, strike, forward, hi, expiry) < price) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("black_ivol: failed to bracket");
    }
    if (!(sigma > lo && sigma < hi)) sigma = 0.5 * (lo + hi);

    for (int it = 0; it < 100; ++it) {
        const double f = price_black(kind, strike, forward, sigma, expiry) - price;
        if (f > 0.0) hi = sigma; else lo = sigma;
        const double st = sigma * std::sqrt(expiry);
        const double d1 = std::log(forward / strike) / st + 0.5 * st;
        const double vega = forward * norm_pdf(d1) * std::sqrt(expiry);
        const double step = vega > 0.0 ? f / vega : 0.0;
        // price-space contract plus a negligible implied-vol step; the final
        // Newton correction keeps the wings accurate where vega is tiny
        if (std::abs(f) <= tol && std::abs(step) <= 1e-10 * sigma) {
            const double polished = sigma - step;
            return polished > 0.0 ? polished : sigma;
        }
        double next = vega > 0.0 ? sigma - step : 0.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        sigma = next;
    }
    throw std::runtime_error("black_ivol: no convergence after 100 iterations");
}

/// Implied displaced-BS volatility for fixed (beta, anchor): Black inversion
/// on the displaced contract. beta = 0 delegates to the Bachelier inverter.
inline double dbs_ivol(double price, OptionKind kind, double strike, double forward, double beta,
                       double anchor, double expiry) {
    if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("dbs_ivol: beta must lie in [0,1]");
    if (!(anchor > 0.0)) throw std::invalid_argument("dbs_ivol: anchor must be > 0");
    if (beta == 0.0) return bachelier_ivol(price, kind, strike, forward, expiry) / anchor;
    const double df = beta * forward + (1.0 - beta) * anchor;
    const double dk = beta * strike + (1.0 - beta) * anchor;
    if (!(df > 0.0) || !(dk > 0.0))
        throw std::invalid_argument("dbs_ivol: displaced forward and strike must be > 0");
    return black_ivol(beta * price, kind, dk, df, expiry) / beta;
}

}  // namespace bachelier
