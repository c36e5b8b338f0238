#pragma once

#include <cmath>
#include <stdexcept>

#include "bachelier/market.hpp"
#include "bachelier/normal.hpp"
#include "bachelier/vanilla.hpp"

namespace bachelier {

/// Hyperbolic normal stochastic volatility model. The terminal forward is a
/// sinh-transformed normal (Johnson S_U), so vanilla prices are closed form.
struct NsvhParams {
    double sigma0 = 0.0;  // price units per sqrt(year)
    double rho = 0.0;     // in (-1, 1), |rho| <= 0.99
    double nu = 0.0;      // vol of vol, 1/sqrt(year)

    double rho_star() const { return std::sqrt(1.0 - rho * rho); }

    void validate() const {
        if (!(sigma0 > 0.0)) throw std::invalid_argument("NsvhParams: sigma0 must be > 0");
        if (std::abs(rho) > 0.99) throw std::invalid_argument("NsvhParams: |rho| must be <= 0.99");
        if (nu < 0.0) throw std::invalid_argument("NsvhParams: nu must be >= 0");
    }
};

namespace detail {

// (1+rho)N(d+nu sqrt(T)) - (1-rho)N(d-nu sqrt(T)) - 2 rho N(d)
inline double nsvh_bracket(double d, double rho, double nu_sqt) {
    return (1.0 + rho) * norm_cdf(d + nu_sqt) - (1.0 - rho) * norm_cdf(d - nu_sqt) -
           2.0 * rho * norm_cdf(d);
}

inline double nsvh_d(double strike, double forward, const NsvhParams& p, double expiry) {
    const double rs = p.rho_star();
    const double growth = std::exp(0.5 * p.nu * p.nu * expiry);
    return (std::atanh(p.rho) +
            std::asinh(p.nu * (forward - strike) / (rs * p.sigma0) - p.rho / rs * growth)) /
           (p.nu * std::sqrt(expiry));
}

// d_sv at the money; independent of sigma0.
inline double nsvh_d_atm(double rho, double nu, double expiry) {
    const double rs = std::sqrt(1.0 - rho * rho);
    const double growth = std::exp(0.5 * nu * nu * expiry);
    return (std::atanh(rho) - std::asinh(rho / rs * growth)) / (nu * std::sqrt(expiry));
}

}  // namespace detail

/// Undiscounted NSVh vanilla price. nu = 0 collapses to the Bachelier price
/// with sigma_n = sigma0.
inline double nsvh_price(OptionKind kind, double strike, double forward, const NsvhParams& p,
                         double expiry) {
    p.validate();
    if (!(expiry > 0.0)) throw std::invalid_argument("nsvh_price: expiry must be > 0");
    if (p.nu == 0.0) return price_bachelier(kind, strike, forward, p.sigma0, expiry);
    const double nu_sqt = p.nu * std::sqrt(expiry);
    const double d = detail::nsvh_d(strike, forward, p, expiry);
    const double wing = p.sigma0 / (2.0 * p.nu) * std::exp(0.5 * p.nu * p.nu * expiry) *
                        detail::nsvh_bracket(d, p.rho, nu_sqt);
    const double th = theta(kind);
    return th * (forward - strike) * norm_cdf(th * d) + wing;
}

/// sigma0 that reproduces a quoted ATM Bachelier vol; the ATM price is
/// exactly proportional to sigma0, so the anchoring solve is a division.
inline double nsvh_sigma0_for_atm(double atm_vol, double rho, double nu, double expiry) {
    if (!(atm_vol > 0.0)) throw std::invalid_argument("nsvh_sigma0_for_atm: atm vol must be > 0");
    if (nu == 0.0) return atm_vol;
    const double nu_sqt = nu * std::sqrt(expiry);
    const double d0 = detail::nsvh_d_atm(rho, nu, expiry);
    const double atm_price = atm_vol * std::sqrt(expiry / (2.0 * M_PI));
    return atm_price * 2.0 * nu * std::exp(-0.5 * nu * nu * expiry) /
           detail::nsvh_bracket(d0, rho, nu_sqt);
}

/// ATM-anchored NSVh price: the wing term is rescaled so that the ATM price
/// equals atm_vol * sqrt(T/(2 pi)) exactly.
inline double nsvh_price_atm_anchored(OptionKind kind, double strike, double forward,
                                      double atm_vol, double rho, double nu, double expiry) {
    if (!(expiry > 0.0)) throw std::invalid_argument("nsvh_price_atm_anchored: expiry must be > 0");
    if (nu == 0.0) return price_bachelier(kind, strike, forward, atm_vol, expiry);
    NsvhParams p{nsvh_sigma0_for_atm(atm_vol, rho, nu, expiry), rho, nu};
    p.validate();
    const double nu_sqt = nu * std::sqrt(expiry);
    const double d = detail::nsvh_d(strike, forward, p, expiry);
    const double d0 = detail::nsvh_d_atm(rho, nu, expiry);
    const double ratio = detail::nsvh_bracket(d, rho, nu_sqt) / detail::nsvh_bracket(d0, rho, nu_sqt);
    const double th = theta(kind);
    return th * (forward - strike) * norm_cdf(th * d) +
           atm_vol * std::sqrt(expiry / (2.0 * M_PI)) * ratio;
}

/// Exact terminal-law transform: F_T = F0 + (sigma0/nu)(sinh(nu W) +
/// rho (cosh(nu W) - e^{nu^2 T/2})) for W ~ N(0, T). Used by the MC oracle.
inline double nsvh_terminal(double forward, const NsvhParams& p, double expiry, double w) {
    if (p.nu == 0.0) return forward + p.sigma0 * w;
    const double growth = std::exp(0.5 * p.nu * p.nu * expiry);
    return forward + p.sigma0 / p.nu *
                         (std::sinh(p.nu * w) + p.rho * (std::cosh(p.nu * w) - growth));
}

}  // namespace bachelier
