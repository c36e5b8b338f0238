#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "bachelier/market.hpp"
#include "bachelier/normal.hpp"
#include "bachelier/vanilla.hpp"

namespace bachelier {

/// Bachelier Greeks; vega is with respect to sigma_n, theta is -dC/dT on the
/// undiscounted price.
inline GreeksBlock greeks_bachelier(OptionKind kind, double strike, double forward, double sigma_n,
                                    double expiry) {
    if (!(sigma_n > 0.0)) throw std::invalid_argument("greeks_bachelier: sigma must be > 0");
    if (!(expiry > 0.0)) throw std::invalid_argument("greeks_bachelier: expiry must be > 0");
    const double sqt = std::sqrt(expiry);
    const double d = (forward - strike) / (sigma_n * sqt);
    const double nd = norm_pdf(d);
    GreeksBlock g;
    g.delta = kind == OptionKind::Call ? norm_cdf(d) : norm_cdf(d) - 1.0;
    g.gamma = nd / (sigma_n * sqt);
    g.vega = sqt * nd;
    g.theta = -sigma_n * nd / (2.0 * sqt);
    return g;
}

namespace detail {

inline GreeksBlock black_greeks_core(OptionKind kind, double strike, double forward, double vol,
                                     double expiry) {
    const double sqt = std::sqrt(expiry);
    const double st = vol * sqt;
    const double d1 = std::log(forward / strike) / st + 0.5 * st;
    const double nd1 = norm_pdf(d1);
    GreeksBlock g;
    g.delta = kind == OptionKind::Call ? norm_cdf(d1) : norm_cdf(d1) - 1.0;
    g.gamma = nd1 / (forward * st);
    g.vega = forward * nd1 * sqt;
    g.theta = -forward * vol * nd1 / (2.0 * sqt);
    return g;
}

}  // namespace detail

inline GreeksBlock greeks_black(OptionKind kind, double strike, double forward, double sigma_bs,
                                double expiry) {
    if (!(sigma_bs > 0.0)) throw std::invalid_argument("greeks_black: sigma must be > 0");
    if (!(expiry > 0.0)) throw std::invalid_argument("greeks_black: expiry must be > 0");
    if (!(strike > 0.0) || !(forward > 0.0))
        throw std::invalid_argument("greeks_black: strike and forward must be > 0");
    return detail::black_greeks_core(kind, strike, forward, sigma_bs, expiry);
}

/// Displaced-BS Greeks, adapted from the Black Greeks on the displaced
/// variable. beta = 1 reproduces greeks_black exactly; beta = 0 the
/// Bachelier Greeks with sigma_n = anchor * sigma (vega scaled by anchor).
inline GreeksBlock greeks_dbs(OptionKind kind, double strike, double forward, const DbsParams& p,
                              double expiry) {
    p.validate();
    if (!(expiry > 0.0)) throw std::invalid_argument("greeks_dbs: expiry must be > 0");
    if (p.beta == 0.0) {
        GreeksBlock g = greeks_bachelier(kind, strike, forward, p.anchor * p.sigma, expiry);
        g.vega *= p.anchor;  // d/d sigma_d = anchor * d/d sigma_n
        return g;
    }
    const double df = p.displace(forward);
    const double dk = p.displace(strike);
    if (!(df > 0.0) || !(dk > 0.0))
        throw std::invalid_argument("greeks_dbs: displaced forward and strike must be > 0");
    GreeksBlock g = detail::black_greeks_core(kind, dk, df, p.beta * p.sigma, expiry);
    g.gamma *= p.beta;
    g.theta /= p.beta;
    return g;
}

struct FdBumps {
    double rel_forward = 1e-5;
    double rel_vol = 1e-5;
    double abs_expiry = 1e-5;  // years
};

/// Central finite-difference Greeks for any pricer f(forward, vol, expiry).
template <typename Pricer>
GreeksBlock greeks_fd(Pricer&& price, double forward, double vol, double expiry,
                      const FdBumps& bumps = {}) {
    const double hf = bumps.rel_forward * std::max(std::abs(forward), 1e-8);
    const double hv = bumps.rel_vol * vol;
    const double ht = std::min(bumps.abs_expiry, 0.5 * expiry);
    const double base = price(forward, vol, expiry);
    GreeksBlock g;
    const double up_f = price(forward + hf, vol, expiry);
    const double dn_f = price(forward - hf, vol, expiry);
    g.delta = (up_f - dn_f) / (2.0 * hf);
    g.gamma = (up_f - 2.0 * base + dn_f) / (hf * hf);
    g.vega = (price(forward, vol + hv, expiry) - price(forward, vol - hv, expiry)) / (2.0 * hv);
    g.theta = -(price(forward, vol, expiry + ht) - price(forward, vol, expiry - ht)) / (2.0 * ht);
    return g;
}

/// Spot delta from forward delta: d/dS0 = e^{(r-q)T} d/dF0.
inline double delta_spot(double delta_forward, double rate, double carry, double expiry) {
    return std::exp((rate - carry) * expiry) * delta_forward;
}

/// ATM BS-vol response to the forward under a normal backbone (leading order).
inline double normal_backbone_slope(double sigma_bs, double forward) {
    if (!(forward > 0.0)) throw std::invalid_argument("normal_backbone_slope: forward must be > 0");
    return -sigma_bs / (2.0 * forward);
}

/// Vega-rotated delta: the BS delta plus the price impact of the
/// backbone-induced volatility move.
inline double delta_backbone_adjusted(double delta_bs, double vega_bs, double backbone_slope) {
    return delta_bs + backbone_slope * vega_bs;
}

inline double delta_backbone_adjusted(double delta_bs, double vega_bs, double sigma_bs,
                                      double forward) {
    return delta_backbone_adjusted(delta_bs, vega_bs, normal_backbone_slope(sigma_bs, forward));
}

}  // namespace bachelier
