#pragma once

#include <cmath>
#include <stdexcept>

#include "bachelier/market.hpp"
#include "bachelier/normal.hpp"
#include "bachelier/quadrature.hpp"
#include "bachelier/vanilla.hpp"

namespace bachelier {

enum class BarrierDirection { Down, Up };
enum class BarrierKnock { Out, In };

/// A single continuously monitored barrier.
struct BarrierSpec {
    BarrierDirection direction = BarrierDirection::Down;
    BarrierKnock knock = BarrierKnock::Out;
    double level = 0.0;
};

enum class BarrierStatus {
    Priced,           // formula evaluated
    AlreadyKnockedOut,// barrier breached at t = 0, knock-out worth 0
    Worthless,        // the payout region is unreachable without knocking out
};

struct BarrierPrice {
    double price = 0.0;
    BarrierStatus status = BarrierStatus::Priced;
};

/// Joint density of the terminal displacement x = F_T - F0 and the running
/// extremum staying inside the bound y (reflection principle).
inline double reflection_density(double x, double y, double sigma_n, double expiry) {
    if (!(sigma_n > 0.0) || !(expiry > 0.0))
        throw std::invalid_argument("reflection_density: sigma and expiry must be > 0");
    const double st = sigma_n * std::sqrt(expiry);
    return (norm_pdf(x / st) - norm_pdf((x - 2.0 * y) / st)) / st;
}

namespace detail {

// Knock-out prices under the Bachelier model: combinations of vanilla and
// suboptimal-exercise prices at the reflected forward 2b - F0.
inline double bachelier_knock_out(OptionKind kind, BarrierDirection dir, double level,
                                  double strike, double forward, double sigma_n, double expiry) {
    const double reflected = 2.0 * level - forward;
    if (kind == OptionKind::Call && dir == BarrierDirection::Down) {
        return price_bachelier(kind, strike, forward, sigma_n, expiry) -
               price_bachelier(kind, strike, reflected, sigma_n, expiry);
    }
    if (kind == OptionKind::Call && dir == BarrierDirection::Up) {
        return price_bachelier(kind, strike, forward, sigma_n, expiry) -
               price_suboptimal_bachelier(kind, strike, level, forward, sigma_n, expiry) -
               price_bachelier(kind, strike, reflected, sigma_n, expiry) +
               price_suboptimal_bachelier(kind, strike, level, reflected, sigma_n, expiry);
    }
    if (kind == OptionKind::Put && dir == BarrierDirection::Down) {
        return price_bachelier(kind, strike, forward, sigma_n, expiry) -
               price_suboptimal_bachelier(kind, strike, level, forward, sigma_n, expiry) -
               price_bachelier(kind, strike, reflected, sigma_n, expiry) +
               price_suboptimal_bachelier(kind, strike, level, reflected, sigma_n, expiry);
    }
    return price_bachelier(kind, strike, forward, sigma_n, expiry) -
           price_bachelier(kind, strike, reflected, sigma_n, expiry);
}

// Knock-out prices under Black-76: reflected forward level^2/F0 with an
// F0/level prefactor on the reflected leg.
inline double black_knock_out(OptionKind kind, BarrierDirection dir, double level, double strike,
                              double forward, double sigma_bs, double expiry) {
    if (!(level > 0.0)) throw std::invalid_argument("barrier: Black barrier level must be > 0");
    const double reflected = level * level / forward;
    const double prefactor = forward / level;
    if (kind == OptionKind::Call && dir == BarrierDirection::Down) {
        return price_black(kind, strike, forward, sigma_bs, expiry) -
               prefactor * price_black(kind, strike, reflected, sigma_bs, expiry);
    }
    if (kind == OptionKind::Call && dir == BarrierDirection::Up) {
        return price_black(kind, strike, forward, sigma_bs, expiry) -
               price_suboptimal_black(kind, strike, level, forward, sigma_bs, expiry) -
               prefactor * (price_black(kind, strike, reflected, sigma_bs, expiry) -
                            price_suboptimal_black(kind, strike, level, reflected, sigma_bs, expiry));
    }
    if (kind == OptionKind::Put && dir == BarrierDirection::Down) {
        return price_black(kind, strike, forward, sigma_bs, expiry) -
               price_suboptimal_black(kind, strike, level, forward, sigma_bs, expiry) -
               prefactor * (price_black(kind, strike, reflected, sigma_bs, expiry) -
                            price_suboptimal_black(kind, strike, level, reflected, sigma_bs, expiry));
    }
    return price_black(kind, strike, forward, sigma_bs, expiry) -
           prefactor * price_black(kind, strike, reflected, sigma_bs, expiry);
}

}  // namespace detail

namespace detail {

template <typename KnockOutFn, typename VanillaFn>
BarrierPrice barrier_price_impl(OptionKind kind, const BarrierSpec& spec, double strike,
                                double forward, KnockOutFn&& knock_out, VanillaFn&& vanilla) {
    const bool breached = spec.direction == BarrierDirection::Down ? forward <= spec.level
                                                                   : forward >= spec.level;
    // an up-and-out call needs K < H, a down-and-out put L < K; otherwise
    // every path into the money has already triggered the barrier
    const bool worthless =
        (kind == OptionKind::Call && spec.direction == BarrierDirection::Up &&
         spec.level <= strike) ||
        (kind == OptionKind::Put && spec.direction == BarrierDirection::Down &&
         spec.level >= strike);
    BarrierPrice ko;
    if (breached) {
        ko = {0.0, BarrierStatus::AlreadyKnockedOut};
    } else if (worthless) {
        ko = {0.0, BarrierStatus::Worthless};
    } else {
        ko = {knock_out(), BarrierStatus::Priced};
    }
    if (spec.knock == BarrierKnock::Out) return ko;
    return {vanilla() - ko.price, BarrierStatus::Priced};
}

}  // namespace detail

/// Knock-out / knock-in barrier price under the Bachelier model. Knock-ins
/// come from in-and-out parity; degenerate knock-outs price to zero with a
/// status flag rather than an error.
inline BarrierPrice barrier_price_bachelier(OptionKind kind, const BarrierSpec& spec,
                                            double strike, double forward, double sigma_n,
                                            double expiry) {
    if (!(sigma_n > 0.0) || !(expiry > 0.0))
        throw std::invalid_argument("barrier_price_bachelier: sigma and expiry must be > 0");
    return detail::barrier_price_impl(
        kind, spec, strike, forward,
        [&] {
            return detail::bachelier_knock_out(kind, spec.direction, spec.level, strike, forward,
                                               sigma_n, expiry);
        },
        [&] { return price_bachelier(kind, strike, forward, sigma_n, expiry); });
}

/// Knock-out / knock-in barrier price under Black-76.
inline BarrierPrice barrier_price_black(OptionKind kind, const BarrierSpec& spec, double strike,
                                        double forward, double sigma_bs, double expiry) {
    if (!(sigma_bs > 0.0) || !(expiry > 0.0))
        throw std::invalid_argument("barrier_price_black: sigma and expiry must be > 0");
    return detail::barrier_price_impl(
        kind, spec, strike, forward,
        [&] {
            return detail::black_knock_out(kind, spec.direction, spec.level, strike, forward,
                                           sigma_bs, expiry);
        },
        [&] { return price_black(kind, strike, forward, sigma_bs, expiry); });
}

/// Displaced-BS barrier price: the Black barrier formulas on the displaced
/// strike, forward and levels, divided by beta. beta = 0 is the Bachelier
/// barrier with sigma_n = anchor * sigma.
inline BarrierPrice barrier_price_dbs(OptionKind kind, const BarrierSpec& spec, double strike,
                                      double forward, const DbsParams& p, double expiry) {
    p.validate();
    if (!(expiry > 0.0)) throw std::invalid_argument("barrier_price_dbs: expiry must be > 0");
    if (p.beta == 0.0)
        return barrier_price_bachelier(kind, spec, strike, forward, p.anchor * p.sigma, expiry);
    const double dl = p.displace(spec.level);
    if (!(dl > 0.0)) throw std::invalid_argument("barrier_price_dbs: displaced level must be > 0");
    BarrierSpec displaced_spec{spec.direction, spec.knock, dl};
    BarrierPrice r = barrier_price_black(kind, displaced_spec, p.displace(strike),
                                         p.displace(forward), p.beta * p.sigma, expiry);
    r.price /= p.beta;
    return r;
}

/// Quadrature evaluation of the knock-out integrals against the reflection
/// density; an independent check of the closed forms (Bachelier only).
inline double barrier_integral_check(OptionKind kind, const BarrierSpec& spec, double strike,
                                     double forward, double sigma_n, double expiry) {
    if (spec.knock != BarrierKnock::Out)
        throw std::invalid_argument("barrier_integral_check: knock-out only");
    const double st = sigma_n * std::sqrt(expiry);
    const double y = spec.level - forward;
    auto payoff_density = [&](double x) {
        return theta(kind) * (x - strike) * reflection_density(x - forward, y, sigma_n, expiry);
    };
    double lo, hi;
    if (kind == OptionKind::Call) {
        lo = strike;
        hi = spec.direction == BarrierDirection::Up ? spec.level
                                                    : std::max(forward, strike) + 13.0 * st;
    } else {
        lo = spec.direction == BarrierDirection::Down ? spec.level
                                                      : std::min(forward, strike) - 13.0 * st;
        hi = strike;
    }
    if (!(hi > lo)) return 0.0;
    const double coarse = detail::integrate(payoff_density, lo, hi, 96);
    const double fine = detail::integrate(payoff_density, lo, hi, 192);
    if (std::abs(fine - coarse) > 1e-9)
        throw std::runtime_error("barrier_integral_check: quadrature did not converge");
    return fine;
}

}  // namespace bachelier
