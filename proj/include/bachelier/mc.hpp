#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bachelier/barrier.hpp"
#include "bachelier/exotics.hpp"
#include "bachelier/market.hpp"
#include "bachelier/model.hpp"
#include "bachelier/normal.hpp"

namespace bachelier::mc {

/// Simulation settings. Identical configs produce bit-identical estimates
/// within one build; every path owns an independently keyed substream, so
/// results do not depend on scheduling or batching.
struct McConfig {
    std::int64_t n_paths = 100000;
    int n_steps = 500;
    std::uint64_t seed = 42;
    bool antithetic = false;

    void validate() const {
        if (n_paths < 2) throw std::invalid_argument("McConfig: n_paths must be >= 2");
        if (n_steps < 1) throw std::invalid_argument("McConfig: n_steps must be >= 1");
    }
};

struct McEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::int64_t n_effective = 0;  // independent samples (antithetic pairs count once)

    double zscore(double reference) const {
        return (mean - reference) / (stderr_of_mean > 0.0 ? stderr_of_mean : 1e-300);
    }
};

/// Counter-based generator: the splitmix64 finalizer applied to
/// key + counter * golden-gamma. Streams are addressed by (seed, stream) and
/// never overlap in practice; normals come from the inverse CDF so the whole
/// oracle is independent of platform RNG libraries.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

    /// Uniform draw strictly inside (0, 1).
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    double normal() { return norm_quantile(uniform()); }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Gaussian source handed to path functors; antithetic runs replay the same
/// stream with flipped signs.
class NormalSource {
  public:
    NormalSource(std::uint64_t seed, std::uint64_t stream, double sign)
        : rng_(seed, stream), sign_(sign) {}
    double operator()() { return sign_ * rng_.normal(); }

  private:
    CounterRng rng_;
    double sign_;
};

namespace detail {

// Runs one payoff sample per independent unit; with antithetic sampling a
// unit is the average of a mirrored pair on the same substream.
template <typename PathFn>
McEstimate run(const McConfig& cfg, PathFn&& path) {
    cfg.validate();
    const bool anti = cfg.antithetic;
    const std::int64_t n_units = anti ? cfg.n_paths / 2 : cfg.n_paths;
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t u = 0; u < n_units; ++u) {
        double x;
        if (anti) {
            NormalSource plus(cfg.seed, static_cast<std::uint64_t>(u), +1.0);
            NormalSource minus(cfg.seed, static_cast<std::uint64_t>(u), -1.0);
            x = 0.5 * (path(plus) + path(minus));
        } else {
            NormalSource src(cfg.seed, static_cast<std::uint64_t>(u), +1.0);
            x = path(src);
        }
        sum += x;
        sum_sq += x * x;
    }
    const double n = static_cast<double>(n_units);
    const double mean = sum / n;
    const double var = std::max(sum_sq / n - mean * mean, 0.0) * n / (n - 1.0);
    return {mean, std::sqrt(var / n), n_units};
}

}  // namespace detail

/// Vanilla option estimate. Bachelier/BS/DBS/NSVh sample their terminal law
/// exactly; CEV and SABR simulate paths (Euler forward, exact log step on the
/// SABR vol) with absorption at zero.
inline McEstimate vanilla(const ModelSpec& model, OptionKind kind, double strike, double forward,
                          double expiry, const McConfig& cfg) {
    const double th = theta(kind);
    const double sqt = std::sqrt(expiry);
    if (const auto* m = std::get_if<BachelierModel>(&model)) {
        const double st = m->sigma * sqt;
        return detail::run(cfg, [&](NormalSource& z) {
            return std::max(th * (forward + st * z() - strike), 0.0);
        });
    }
    if (const auto* m = std::get_if<BlackModel>(&model)) {
        const double st = m->sigma * sqt;
        return detail::run(cfg, [&](NormalSource& z) {
            const double f = forward * std::exp(-0.5 * st * st + st * z());
            return std::max(th * (f - strike), 0.0);
        });
    }
    if (const auto* m = std::get_if<DbsParams>(&model)) {
        m->validate();
        if (m->beta == 0.0)
            return vanilla(BachelierModel{m->anchor * m->sigma}, kind, strike, forward, expiry, cfg);
        const double st = m->beta * m->sigma * sqt;
        const double df = m->displace(forward);
        const double shift = (1.0 - m->beta) * m->anchor;
        return detail::run(cfg, [&](NormalSource& z) {
            const double f = (df * std::exp(-0.5 * st * st + st * z()) - shift) / m->beta;
            return std::max(th * (f - strike), 0.0);
        });
    }
    if (const auto* m = std::get_if<NsvhParams>(&model)) {
        m->validate();
        return detail::run(cfg, [&](NormalSource& z) {
            const double f = nsvh_terminal(forward, *m, expiry, sqt * z());
            return std::max(th * (f - strike), 0.0);
        });
    }
    if (const auto* m = std::get_if<CevParams>(&model)) {
        m->validate();
        const double dt = expiry / cfg.n_steps;
        const double sq_dt = std::sqrt(dt);
        return detail::run(cfg, [&](NormalSource& z) {
            double f = forward;
            for (int i = 0; i < cfg.n_steps; ++i) {
                f += m->sigma * std::pow(f, m->beta) * sq_dt * z();
                if (f <= 0.0) { f = 0.0; break; }  // absorbed
            }
            return std::max(th * (f - strike), 0.0);
        });
    }
    const auto& m = std::get<SabrParams>(model);
    m.validate();
    const double dt = expiry / cfg.n_steps;
    const double sq_dt = std::sqrt(dt);
    const double rho_star = std::sqrt(1.0 - m.rho * m.rho);
    return detail::run(cfg, [&](NormalSource& z) {
        double f = forward, sig = m.sigma0;
        for (int i = 0; i < cfg.n_steps; ++i) {
            const double z1 = z();
            const double z2 = z();
            const double dw = m.rho * z1 + rho_star * z2;
            if (m.beta == 0.0) {
                f += sig * sq_dt * dw;
            } else {
                f += sig * std::pow(f, m.beta) * sq_dt * dw;
            }
            sig *= std::exp(-0.5 * m.nu * m.nu * dt + m.nu * sq_dt * z1);
            if (m.beta > 0.0 && f <= 0.0) { f = 0.0; break; }  // absorbed
        }
        return std::max(th * (f - strike), 0.0);
    });
}

/// Continuously monitored barrier estimate for Bachelier and Black: each
/// step multiplies the survival weight by the exact Brownian-bridge
/// non-crossing probability, removing the discrete-monitoring bias.
inline McEstimate barrier(const ModelSpec& model, OptionKind kind, const BarrierSpec& spec,
                          double strike, double forward, double expiry, const McConfig& cfg) {
    if (cfg.n_steps < 50)
        throw std::invalid_argument("mc::barrier: n_steps must be >= 50");
    const bool is_bachelier = std::holds_alternative<BachelierModel>(model);
    if (!is_bachelier && !std::holds_alternative<BlackModel>(model))
        throw std::invalid_argument("mc::barrier: bachelier and bs models only");
    const double sigma = is_bachelier ? std::get<BachelierModel>(model).sigma
                                      : std::get<BlackModel>(model).sigma;
    if (!(sigma > 0.0)) throw std::invalid_argument("mc::barrier: sigma must be > 0");
    const double th = theta(kind);
    const double dt = expiry / cfg.n_steps;
    const double sq_dt = std::sqrt(dt);
    const bool down = spec.direction == BarrierDirection::Down;
    // work additively: in log space for Black, price space for Bachelier
    const double x0 = is_bachelier ? forward : std::log(forward);
    const double b = is_bachelier ? spec.level : std::log(spec.level);
    const double drift = is_bachelier ? 0.0 : -0.5 * sigma * sigma * dt;
    const double var_dt = sigma * sigma * dt;

    return detail::run(cfg, [&](NormalSource& z) {
        double x = x0;
        double survival = (down ? x > b : x < b) ? 1.0 : 0.0;
        for (int i = 0; i < cfg.n_steps && survival > 0.0; ++i) {
            const double x_next = x + drift + sigma * sq_dt * z();
            if (down ? x_next <= b : x_next >= b) {
                survival = 0.0;
            } else {
                survival *= 1.0 - std::exp(-2.0 * (b - x) * (b - x_next) / var_dt);
            }
            x = x_next;
        }
        const double f = is_bachelier ? x : std::exp(x);
        const double payoff = std::max(th * (f - strike), 0.0);
        return spec.knock == BarrierKnock::Out ? payoff * survival : payoff * (1.0 - survival);
    });
}

/// Asian estimate: discrete schedules sample the exact joint normal of the
/// observations; continuous windows average a uniform n_steps grid.
inline McEstimate asian(OptionKind kind, double strike, double forward, double sigma_n,
                        const AsianSpec& spec, const McConfig& cfg) {
    if (!(sigma_n > 0.0)) throw std::invalid_argument("mc::asian: sigma must be > 0");
    spec.validate();
    std::vector<double> times;
    if (spec.continuous) {
        times.resize(cfg.n_steps);
        const double h = (spec.window_end - spec.window_start) / cfg.n_steps;
        for (int i = 0; i < cfg.n_steps; ++i) times[i] = spec.window_start + (i + 1) * h;
    } else {
        times = spec.times;
    }
    const double th = theta(kind);
    return detail::run(cfg, [&](NormalSource& z) {
        double f = forward, t_prev = 0.0, sum = 0.0;
        for (double t : times) {
            f += sigma_n * std::sqrt(t - t_prev) * z();
            t_prev = t;
            sum += f;
        }
        return std::max(th * (sum / static_cast<double>(times.size()) - strike), 0.0);
    });
}

/// Basket estimate from Cholesky-correlated terminal normals.
inline McEstimate basket(OptionKind kind, double strike, const BasketSpec& spec,
                         const McConfig& cfg) {
    spec.validate();
    const auto lower = bachelier::detail::cholesky_lower(spec.correlation);
    const std::size_t n = spec.weights.size();
    const double sq_t = std::sqrt(spec.expiry);
    const double th = theta(kind);
    return detail::run(cfg, [&](NormalSource& z) {
        double basket_value = 0.0;
        std::vector<double> draws(n);
        for (std::size_t i = 0; i < n; ++i) draws[i] = z();
        for (std::size_t i = 0; i < n; ++i) {
            double corr_z = 0.0;
            for (std::size_t j = 0; j <= i; ++j) corr_z += lower[i][j] * draws[j];
            basket_value += spec.weights[i] * (spec.forwards[i] + spec.vols[i] * sq_t * corr_z);
        }
        return std::max(th * (basket_value - strike), 0.0);
    });
}

}  // namespace bachelier::mc
