#pragma once

#include <cmath>
#include <stdexcept>

#include "bachelier/implied_vol.hpp"
#include "bachelier/market.hpp"
#include "bachelier/model.hpp"
#include "bachelier/normal.hpp"
#include "bachelier/vanilla.hpp"

namespace bachelier {

enum class Bs2NVariant { Improved, Hkl };

/// Model-free upper bound on a BS implied volatility at log-moneyness k.
inline double lee_volatility_bound(double k, double expiry) {
    return std::sqrt(2.0 * std::abs(std::log(k)) / expiry);
}

/// A converted BS volatility; lee_bound_warning marks values above the
/// model-free wing bound, where no BS vol can actually reproduce the price.
struct BsVolResult {
    double vol = 0.0;
    bool lee_bound_warning = false;
};

/// DBS -> Bachelier ATM conversion by exact price matching. The beta -> 0
/// limit is anchor * sigma_d; below 1e-8 the limit value is returned.
inline double dbs_to_bachelier_atm(double sigma_d, double beta, double anchor, double forward,
                                   double expiry) {
    if (!(sigma_d > 0.0)) throw std::invalid_argument("dbs_to_bachelier_atm: sigma must be > 0");
    if (!(expiry > 0.0)) throw std::invalid_argument("dbs_to_bachelier_atm: expiry must be > 0");
    const double df = beta * forward + (1.0 - beta) * anchor;
    if (!(df > 0.0)) throw std::invalid_argument("dbs_to_bachelier_atm: displaced forward must be > 0");
    if (beta < 1e-8) return anchor * sigma_d;
    const double half = 0.5 * beta * sigma_d * std::sqrt(expiry);
    return df / beta * std::sqrt(2.0 * M_PI / expiry) * (2.0 * norm_cdf(half) - 1.0);
}

/// DBS -> BS ATM conversion by exact price matching.
inline double dbs_to_bs_atm(double sigma_d, double beta, double anchor, double forward,
                            double expiry) {
    if (!(sigma_d > 0.0)) throw std::invalid_argument("dbs_to_bs_atm: sigma must be > 0");
    if (!(forward > 0.0)) throw std::invalid_argument("dbs_to_bs_atm: forward must be > 0");
    if (!(expiry > 0.0)) throw std::invalid_argument("dbs_to_bs_atm: expiry must be > 0");
    const double df = beta * forward + (1.0 - beta) * anchor;
    if (!(df > 0.0)) throw std::invalid_argument("dbs_to_bs_atm: displaced forward must be > 0");
    double arg;
    if (beta < 1e-8) {
        // limit: ATM DBS price -> anchor sigma_d sqrt(T/2pi)
        arg = anchor * sigma_d * std::sqrt(expiry / (2.0 * M_PI)) / (2.0 * forward) + 0.5;
    } else {
        const double half = 0.5 * beta * sigma_d * std::sqrt(expiry);
        arg = df / (beta * forward) * (norm_cdf(half) - 0.5) + 0.5;
    }
    if (!(arg > 0.0 && arg < 1.0))
        throw std::invalid_argument("dbs_to_bs_atm: DBS ATM price exceeds the BS-attainable range");
    return 2.0 / std::sqrt(expiry) * norm_quantile(arg);
}

/// BS -> Bachelier smile-level conversion. The improved variant removes the
/// k = 1 singularity and replaces the (1 - aT) correction by 1/(1 + aT); the
/// hkl variant is the earlier expansion kept for comparison.
inline double bs_to_bachelier_smile(double strike, double sigma_bs, double forward, double expiry,
                                    Bs2NVariant variant = Bs2NVariant::Improved) {
    if (!(strike > 0.0) || !(forward > 0.0))
        throw std::invalid_argument("bs_to_bachelier_smile: strike and forward must be > 0");
    if (!(sigma_bs > 0.0)) throw std::invalid_argument("bs_to_bachelier_smile: sigma must be > 0");
    const double k = strike / forward;
    const double lk = std::log(k);
    if (variant == Bs2NVariant::Improved) {
        return sigma_bs * forward * std::sqrt(k) * (1.0 + lk * lk / 24.0) /
               (1.0 + sigma_bs * sigma_bs * expiry / 24.0);
    }
    double ratio, log_ratio_term;  // (k-1)/log k and log((k-1)/(sqrt(k) log k))/log^2 k
    if (std::abs(lk) < 1e-6) {
        ratio = 1.0;
        log_ratio_term = 1.0 / 24.0;
    } else {
        ratio = (k - 1.0) / lk;
        log_ratio_term = std::log((k - 1.0) / (std::sqrt(k) * lk)) / (lk * lk);
    }
    return sigma_bs * forward * ratio * (1.0 - log_ratio_term * sigma_bs * sigma_bs * expiry);
}

/// Bachelier -> BS smile-level conversion (the approximate inverse of the
/// improved formula). The result is flagged when it breaches the Lee bound:
/// for small strikes no BS volatility exists at all.
inline BsVolResult bachelier_to_bs_smile(double strike, double sigma_n, double forward,
                                         double expiry) {
    if (!(strike > 0.0) || !(forward > 0.0))
        throw std::invalid_argument("bachelier_to_bs_smile: strike and forward must be > 0");
    if (!(sigma_n > 0.0)) throw std::invalid_argument("bachelier_to_bs_smile: sigma must be > 0");
    const double k = strike / forward;
    const double lk = std::log(k);
    const double vol = sigma_n / (forward * std::sqrt(k)) *
                       (1.0 + sigma_n * sigma_n * expiry / (24.0 * k * forward * forward)) /
                       (1.0 + lk * lk / 24.0);
    return {vol, vol > lee_volatility_bound(k, expiry)};
}

/// DBS -> Bachelier smile-level conversion on the displaced moneyness.
inline double dbs_to_bachelier_smile(double strike, double sigma_d, double beta, double anchor,
                                     double forward, double expiry) {
    if (!(sigma_d > 0.0)) throw std::invalid_argument("dbs_to_bachelier_smile: sigma must be > 0");
    const double df = beta * forward + (1.0 - beta) * anchor;
    const double dk = beta * strike + (1.0 - beta) * anchor;
    if (!(df > 0.0) || !(dk > 0.0))
        throw std::invalid_argument("dbs_to_bachelier_smile: displaced moneyness must be > 0");
    const double kd = dk / df;
    const double lkd = std::log(kd);
    return sigma_d * df * std::sqrt(kd) * (1.0 + lkd * lkd / 24.0) /
           (1.0 + beta * beta * sigma_d * sigma_d * expiry / 24.0);
}

/// DBS -> BS smile-level conversion: the displaced Bachelier conversion
/// composed with the Bachelier -> BS inverse.
inline BsVolResult dbs_to_bs_smile(double strike, double sigma_d, double beta, double anchor,
                                   double forward, double expiry) {
    const double sigma_n = dbs_to_bachelier_smile(strike, sigma_d, beta, anchor, forward, expiry);
    return bachelier_to_bs_smile(strike, sigma_n, forward, expiry);
}

/// Target family for the exact (price-matching) converter.
struct VolTarget {
    enum class Family { Bachelier, Bs, Dbs };
    Family family = Family::Bachelier;
    double beta = 1.0;    // Dbs only
    double anchor = 1.0;  // Dbs only

    static VolTarget bachelier() { return {Family::Bachelier, 0.0, 1.0}; }
    static VolTarget bs() { return {Family::Bs, 1.0, 1.0}; }
    static VolTarget dbs(double beta, double anchor) { return {Family::Dbs, beta, anchor}; }
};

/// Exact volatility conversion: price under the source model, invert under
/// the target family. This is the accuracy oracle for the closed-form
/// conversions above; it fails where the target vol does not exist.
inline double exact_convert(const ModelSpec& from, const VolTarget& to, double strike,
                            double forward, double expiry) {
    const OptionKind kind = otm_side(strike, forward);
    const double price = price_vanilla(from, kind, strike, forward, expiry);
    switch (to.family) {
        case VolTarget::Family::Bachelier:
            return bachelier_ivol(price, kind, strike, forward, expiry);
        case VolTarget::Family::Bs:
            return black_ivol(price, kind, strike, forward, expiry);
        case VolTarget::Family::Dbs:
            return dbs_ivol(price, kind, strike, forward, to.beta, to.anchor, expiry);
    }
    throw std::logic_error("exact_convert: unknown target family");
}

}  // namespace bachelier
