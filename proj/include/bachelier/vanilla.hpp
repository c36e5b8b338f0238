#pragma once

#include <cmath>
#include <stdexcept>

#include "bachelier/chi_squared.hpp"
#include "bachelier/market.hpp"
#include "bachelier/normal.hpp"

namespace bachelier {

/// Displaced Black-Scholes parameters. The displaced variable
/// D(F) = beta*F + (1-beta)*anchor follows a geometric BM with vol sigma;
/// beta = 1 is Black-Scholes, beta -> 0 is Bachelier with sigma_n = anchor*sigma.
struct DbsParams {
    double sigma = 0.0;   // per sqrt(year), on the displaced variable
    double beta = 1.0;    // in [0, 1]
    double anchor = 1.0;  // displacement anchor A > 0

    double displace(double x) const { return beta * x + (1.0 - beta) * anchor; }

    void validate() const {
        if (!(sigma > 0.0)) throw std::invalid_argument("DbsParams: sigma must be > 0");
        if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("DbsParams: beta must lie in [0,1]");
        if (!(anchor > 0.0)) throw std::invalid_argument("DbsParams: anchor must be > 0");
    }
};

/// CEV parameters for dF = sigma * F^beta dW with absorption at zero.
struct CevParams {
    double sigma = 0.0;  // price^(1-beta) per sqrt(year)
    double beta = 0.5;   // in (0, 1]

    void validate() const {
        if (!(sigma > 0.0)) throw std::invalid_argument("CevParams: sigma must be > 0");
        if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("CevParams: beta must lie in (0,1]");
    }
};

/// Price of a vanilla option on a normally distributed terminal value with
/// the given mean and standard deviation. sd = 0 returns the intrinsic value.
inline double price_bachelier_general(OptionKind kind, double strike, double mean, double sd) {
    if (sd < 0.0) throw std::invalid_argument("price_bachelier_general: sd must be >= 0");
    if (sd == 0.0) return intrinsic_value(kind, strike, mean);
    const double th = theta(kind);
    const double d = th * (mean - strike) / sd;
    return sd * (d * norm_cdf(d) + norm_pdf(d));
}

/// Undiscounted Bachelier price: the forward follows an arithmetic BM with
/// volatility sigma_n in price units. Negative strikes and forwards are fine.
inline double price_bachelier(OptionKind kind, double strike, double forward, double sigma_n,
                              double expiry) {
    if (!(sigma_n > 0.0)) throw std::invalid_argument("price_bachelier: sigma must be > 0");
    if (expiry < 0.0) throw std::invalid_argument("price_bachelier: expiry must be >= 0");
    return price_bachelier_general(kind, strike, forward, sigma_n * std::sqrt(expiry));
}

/// Bachelier on the spot: dS = (r-q) S dt + sigma dW (an OU process). The
/// terminal forward stays normal; its sd integrates the exponentially
/// weighted variance.
inline double price_bachelier_ou_spot(OptionKind kind, double strike, double spot,
                                      double sigma_n_spot, double rate, double carry,
                                      double expiry) {
    if (!(sigma_n_spot > 0.0)) throw std::invalid_argument("price_bachelier_ou_spot: sigma must be > 0");
    if (expiry < 0.0) throw std::invalid_argument("price_bachelier_ou_spot: expiry must be >= 0");
    const double mu = forward_from_spot(spot, rate, carry, expiry);
    const double x = (rate - carry) * expiry;
    double var_time;  // (e^{2x}-1)/(2(r-q)), removable singularity at r = q
    if (std::abs(x) < 1e-8) {
        var_time = expiry * (1.0 + x * (1.0 + 2.0 * x / 3.0));
    } else {
        var_time = std::expm1(2.0 * x) / (2.0 * (rate - carry));
    }
    return price_bachelier_general(kind, strike, mu, sigma_n_spot * std::sqrt(var_time));
}

namespace detail {

// Black-76 on explicit forward/strike/vol; shared by price_black and
// price_dbs so that beta = 1 reproduces Black bit-for-bit.
inline double black_core(OptionKind kind, double strike, double forward, double vol, double expiry) {
    if (expiry == 0.0) return intrinsic_value(kind, strike, forward);
    const double st = vol * std::sqrt(expiry);
    const double d1 = std::log(forward / strike) / st + 0.5 * st;
    const double d2 = d1 - st;
    if (kind == OptionKind::Call) return forward * norm_cdf(d1) - strike * norm_cdf(d2);
    return strike * norm_cdf(-d2) - forward * norm_cdf(-d1);
}

}  // namespace detail

/// Undiscounted Black-76 price; requires positive forward and strike.
inline double price_black(OptionKind kind, double strike, double forward, double sigma_bs,
                          double expiry) {
    if (!(sigma_bs > 0.0)) throw std::invalid_argument("price_black: sigma must be > 0");
    if (expiry < 0.0) throw std::invalid_argument("price_black: expiry must be >= 0");
    if (!(strike > 0.0)) throw std::invalid_argument("price_black: strike must be > 0");
    if (!(forward > 0.0)) throw std::invalid_argument("price_black: forward must be > 0");
    return detail::black_core(kind, strike, forward, sigma_bs, expiry);
}

/// Undiscounted displaced-BS price: Black on the displaced variable with vol
/// beta*sigma, divided by beta. beta = 0 dispatches to the Bachelier limit;
/// below 1e-4 a rearranged form avoids the cancellation in the 1/beta factor.
inline double price_dbs(OptionKind kind, double strike, double forward, const DbsParams& p,
                        double expiry) {
    p.validate();
    if (expiry < 0.0) throw std::invalid_argument("price_dbs: expiry must be >= 0");
    if (p.beta == 0.0) return price_bachelier(kind, strike, forward, p.anchor * p.sigma, expiry);
    const double df = p.displace(forward);
    const double dk = p.displace(strike);
    if (!(df > 0.0)) throw std::invalid_argument("price_dbs: displaced forward must be > 0");
    if (!(dk > 0.0)) throw std::invalid_argument("price_dbs: displaced strike must be > 0");
    if (expiry == 0.0) return intrinsic_value(kind, strike, forward);
    if (p.beta < 1e-4) {
        const double st = p.beta * p.sigma * std::sqrt(expiry);
        const double d1 = std::log1p(p.beta * (forward - strike) / dk) / st + 0.5 * st;
        const double d2 = d1 - st;
        const double dm = 0.5 * (d1 + d2);
        // N(d1)-N(d2) by midpoint expansion; the direct difference loses all
        // precision once d1-d2 = beta*sigma*sqrt(T) is near machine epsilon
        const double cdf_diff = st * norm_pdf(dm) * (1.0 + st * st * (dm * dm - 1.0) / 24.0);
        const double th = theta(kind);
        return th * (forward - strike) * norm_cdf(th * d2) + (df / p.beta) * cdf_diff;
    }
    return detail::black_core(kind, dk, df, p.beta * p.sigma, expiry) / p.beta;
}

/// Undiscounted CEV price from the noncentral chi-squared tail pair; the
/// absorbing boundary at zero is built into the distribution. beta = 1 is
/// exactly geometric BM and dispatches to Black.
inline double price_cev(OptionKind kind, double strike, double forward, const CevParams& p,
                        double expiry) {
    p.validate();
    if (!(forward > 0.0)) throw std::invalid_argument("price_cev: forward must be > 0");
    if (strike < 0.0) throw std::invalid_argument("price_cev: strike must be >= 0");
    if (expiry < 0.0) throw std::invalid_argument("price_cev: expiry must be >= 0");
    if (expiry == 0.0) return intrinsic_value(kind, strike, forward);
    if (p.beta == 1.0) return detail::black_core(kind, strike, forward, p.sigma, expiry);
    const double bstar = 1.0 - p.beta;
    const double denom = bstar * bstar * p.sigma * p.sigma * expiry;
    const double a = std::pow(strike, 2.0 * bstar) / denom;   // strike argument
    const double b = std::pow(forward, 2.0 * bstar) / denom;  // forward argument
    const Chi2NcParams strike_leg{1.0 / bstar, a};
    const Chi2NcParams forward_leg{2.0 + 1.0 / bstar, b};
    if (kind == OptionKind::Call)
        return forward * chi2nc_sf(a, forward_leg) - strike * chi2nc_cdf(b, strike_leg);
    return strike * chi2nc_sf(b, strike_leg) - forward * chi2nc_cdf(a, forward_leg);
}

/// Bachelier price under the suboptimal policy of exercising when the
/// terminal forward crosses exercise_level instead of the strike. Equals the
/// vanilla price only at exercise_level == strike.
inline double price_suboptimal_bachelier(OptionKind kind, double strike, double exercise_level,
                                         double forward, double sigma_n, double expiry) {
    if (!(sigma_n > 0.0)) throw std::invalid_argument("price_suboptimal_bachelier: sigma must be > 0");
    if (!(expiry > 0.0)) throw std::invalid_argument("price_suboptimal_bachelier: expiry must be > 0");
    const double st = sigma_n * std::sqrt(expiry);
    const double ds = (forward - exercise_level) / st;
    const double th = theta(kind);
    return th * (forward - strike) * norm_cdf(th * ds) + st * norm_pdf(ds);
}

/// Black price under a suboptimal exercise threshold.
inline double price_suboptimal_black(OptionKind kind, double strike, double exercise_level,
                                     double forward, double sigma_bs, double expiry) {
    if (!(sigma_bs > 0.0)) throw std::invalid_argument("price_suboptimal_black: sigma must be > 0");
    if (!(expiry > 0.0)) throw std::invalid_argument("price_suboptimal_black: expiry must be > 0");
    if (!(strike > 0.0) || !(forward > 0.0) || !(exercise_level > 0.0))
        throw std::invalid_argument("price_suboptimal_black: strike, forward, level must be > 0");
    const double st = sigma_bs * std::sqrt(expiry);
    const double d1 = std::log(forward / exercise_level) / st + 0.5 * st;
    const double d2 = d1 - st;
    if (kind == OptionKind::Call) return forward * norm_cdf(d1) - strike * norm_cdf(d2);
    return strike * norm_cdf(-d2) - forward * norm_cdf(-d1);
}

/// Displaced-BS price under a suboptimal exercise threshold, via the usual
/// displaced substitution.
inline double price_suboptimal_dbs(OptionKind kind, double strike, double exercise_level,
                                   double forward, const DbsParams& p, double expiry) {
    p.validate();
    if (p.beta == 0.0)
        return price_suboptimal_bachelier(kind, strike, exercise_level, forward,
                                          p.anchor * p.sigma, expiry);
    return price_suboptimal_black(kind, p.displace(strike), p.displace(exercise_level),
                                  p.displace(forward), p.beta * p.sigma, expiry) / p.beta;
}

}  // namespace bachelier
