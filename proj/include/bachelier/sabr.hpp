#pragma once

#include <cmath>
#include <stdexcept>

#include "bachelier/normal.hpp"

namespace bachelier {

/// SABR parameters: dF = sigma_t F^beta dW, dsigma = nu sigma dZ, corr rho.
struct SabrParams {
    double sigma0 = 0.0;  // initial volatility, units price^(1-beta)/sqrt(year)
    double beta = 0.0;    // elasticity in [0, 1]
    double rho = 0.0;     // in (-1, 1)
    double nu = 0.0;      // vol of vol, 1/sqrt(year)

    void validate() const {
        if (!(sigma0 > 0.0)) throw std::invalid_argument("SabrParams: sigma0 must be > 0");
        if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("SabrParams: beta must lie in [0,1]");
        if (std::abs(rho) > 0.9999) throw std::invalid_argument("SabrParams: |rho| must be <= 0.9999");
        if (nu < 0.0) throw std::invalid_argument("SabrParams: nu must be >= 0");
    }
};

/// Vol-of-vol correction factor H(z) = z / log((sqrt(1+2 rho z+z^2)+z+rho)/(1+rho)),
/// H(0) = 1; near zero the direct form is 0/0 so a two-term series is used.
inline double sabr_h(double z, double rho) {
    if (std::abs(z) < 1e-6) return 1.0 + 0.5 * rho * z;
    return z / std::log((std::sqrt(1.0 + (2.0 * rho + z) * z) + z + rho) / (1.0 + rho));
}

/// Equivalent Bachelier volatility of the normal SABR model (beta = 0).
/// Well defined for any strike and forward, including negative ones.
inline double sabr_normal_case_vol(double strike, double forward, double sigma0, double rho,
                                   double nu, double expiry) {
    if (!(sigma0 > 0.0)) throw std::invalid_argument("sabr_normal_case_vol: sigma0 must be > 0");
    if (nu < 0.0) throw std::invalid_argument("sabr_normal_case_vol: nu must be >= 0");
    const double z = nu * (strike - forward) / sigma0;
    return sigma0 * sabr_h(z, rho) * (1.0 + (2.0 - 3.0 * rho * rho) / 24.0 * nu * nu * expiry);
}

namespace detail {

// log(q k^{beta/2}/(k-1)) / q^2 of the SABR expansion; finite but 0/0 at
// k = 1, evaluated there by a symmetric shift average.
inline double sabr_log_term(double k, double beta, double bstar) {
    auto raw = [beta, bstar](double kk) {
        const double lk = std::log(kk);
        const double q = beta == 1.0 ? lk : std::expm1(bstar * lk) / bstar;
        return std::log(q * std::pow(kk, 0.5 * beta) / (kk - 1.0)) / (q * q);
    };
    constexpr double kWindow = 1e-5;
    if (std::abs(k - 1.0) < kWindow) return 0.5 * (raw(k + kWindow) + raw(k - kWindow));
    return raw(k);
}

}  // namespace detail

/// Equivalent Bachelier volatility of the SABR model (Hagan's normal-vol
/// expansion). For beta > 0 both strike and forward must be positive; the
/// beta = 0 case places no sign restriction.
inline double sabr_bachelier_vol(double strike, double forward, const SabrParams& p,
                                 double expiry) {
    p.validate();
    if (p.beta == 0.0)
        return sabr_normal_case_vol(strike, forward, p.sigma0, p.rho, p.nu, expiry);
    if (!(strike > 0.0) || !(forward > 0.0))
        throw std::invalid_argument("sabr_bachelier_vol: beta > 0 requires strike, forward > 0");

    const double bstar = 1.0 - p.beta;
    const double k = strike / forward;
    const double lk = std::log(k);
    const double alpha = p.sigma0 / std::pow(forward, bstar);
    const double q = p.beta == 1.0 ? lk : std::expm1(bstar * lk) / bstar;
    const double z = p.nu / alpha * q;

    const double atm = std::abs(k - 1.0) < 1e-12;
    const double prefactor = atm ? 1.0 : (k - 1.0) / q;
    const double cev_ratio = atm ? p.beta : std::expm1(p.beta * lk) / (k - 1.0);  // (k^b-1)/(k-1)
    const double log_term = detail::sabr_log_term(k, p.beta, bstar);

    const double correction = 1.0 + (log_term * alpha * alpha +
                                     0.25 * p.rho * cev_ratio * alpha * p.nu +
                                     (2.0 - 3.0 * p.rho * p.rho) / 24.0 * p.nu * p.nu) *
                                        expiry;
    return p.sigma0 * std::pow(forward, p.beta) * sabr_h(z, p.rho) * prefactor * correction;
}

/// sigma0 that reproduces a given ATM Bachelier vol in the normal SABR
/// expansion; the ATM equation is linear in sigma0 since H(0) = 1.
inline double sabr_sigma0_for_atm(double atm_vol, double rho, double nu, double expiry) {
    if (!(atm_vol > 0.0)) throw std::invalid_argument("sabr_sigma0_for_atm: atm vol must be > 0");
    return atm_vol / (1.0 + (2.0 - 3.0 * rho * rho) / 24.0 * nu * nu * expiry);
}

/// ATM-anchored smile: sigma_n(K) = sigma_n(F0) H(z) with z from the sigma0
/// that matches the quoted ATM vol.
inline double sabr_vol_atm_anchored(double strike, double forward, double atm_vol, double rho,
                                    double nu, double expiry) {
    const double sigma0 = sabr_sigma0_for_atm(atm_vol, rho, nu, expiry);
    const double z = nu * (strike - forward) / sigma0;
    return atm_vol * sabr_h(z, rho);
}

}  // namespace bachelier
