#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bachelier/market.hpp"
#include "bachelier/vanilla.hpp"

namespace bachelier {

namespace detail {

// Cholesky factor of a symmetric PSD matrix; pivots below -1e-12 reject the
// input as non-PSD, smaller negative pivots are clamped to zero.
inline std::vector<std::vector<double>> cholesky_lower(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<double>> lower(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = m[i][j];
            for (std::size_t k = 0; k < j; ++k) sum -= lower[i][k] * lower[j][k];
            if (i == j) {
                if (sum < -1e-12)
                    throw std::invalid_argument("correlation matrix is not positive semidefinite");
                lower[i][i] = std::sqrt(std::max(sum, 0.0));
            } else {
                lower[i][j] = lower[j][j] > 0.0 ? sum / lower[j][j] : 0.0;
            }
        }
    }
    return lower;
}

}  // namespace detail

/// A basket of correlated Bachelier assets.
struct BasketSpec {
    std::vector<double> weights;
    std::vector<double> forwards;
    std::vector<double> vols;  // sigma_n per asset
    std::vector<std::vector<double>> correlation;
    double expiry = 0.0;

    void validate() const {
        const std::size_t n = weights.size();
        if (n == 0) throw std::invalid_argument("BasketSpec: empty basket");
        if (forwards.size() != n || vols.size() != n || correlation.size() != n)
            throw std::invalid_argument("BasketSpec: dimension mismatch");
        if (expiry < 0.0) throw std::invalid_argument("BasketSpec: expiry must be >= 0");
        for (std::size_t i = 0; i < n; ++i) {
            if (vols[i] < 0.0) throw std::invalid_argument("BasketSpec: vols must be >= 0");
            if (correlation[i].size() != n)
                throw std::invalid_argument("BasketSpec: correlation must be square");
            if (std::abs(correlation[i][i] - 1.0) > 1e-12)
                throw std::invalid_argument("BasketSpec: correlation diagonal must be 1");
            for (std::size_t j = 0; j < n; ++j)
                if (std::abs(correlation[i][j] - correlation[j][i]) > 1e-12)
                    throw std::invalid_argument("BasketSpec: correlation must be symmetric");
        }
        detail::cholesky_lower(correlation);  // PSD check
    }

    double mean() const {
        double b0 = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) b0 += weights[i] * forwards[i];
        return b0;
    }

    /// sd of the terminal basket value, sqrt(w' Sigma w) with
    /// Sigma_ij = rho_ij sigma_i sigma_j T.
    double sd() const {
        double var = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            for (std::size_t j = 0; j < weights.size(); ++j)
                var += weights[i] * weights[j] * correlation[i][j] * vols[i] * vols[j] * expiry;
        return std::sqrt(std::max(var, 0.0));
    }
};

/// Monitoring schedule of an Asian option: either discrete observation times
/// ending at expiry, or a continuous averaging window [start, expiry].
struct AsianSpec {
    std::vector<double> times;  // discrete monitoring, strictly increasing
    double window_start = 0.0;  // continuous monitoring
    double window_end = 0.0;
    bool continuous = false;

    static AsianSpec discrete(std::vector<double> observation_times) {
        AsianSpec s;
        s.times = std::move(observation_times);
        return s;
    }
    static AsianSpec continuous_window(double start, double end) {
        AsianSpec s;
        s.continuous = true;
        s.window_start = start;
        s.window_end = end;
        return s;
    }

    void validate() const {
        if (continuous) {
            if (!(window_start >= 0.0 && window_start < window_end))
                throw std::invalid_argument("AsianSpec: need 0 <= start < end");
            return;
        }
        if (times.empty()) throw std::invalid_argument("AsianSpec: no observation times");
        double prev = -1.0;
        for (double t : times) {
            if (t < 0.0 || t <= prev)
                throw std::invalid_argument("AsianSpec: times must be nonnegative and strictly increasing");
            prev = t;
        }
    }

    /// sd of the average: discrete (sigma/N) sqrt(sum_ij min(t_i,t_j)),
    /// continuous sigma sqrt((2S+T)/3).
    double average_sd(double sigma_n) const {
        validate();
        if (continuous) return sigma_n * std::sqrt((2.0 * window_start + window_end) / 3.0);
        // sum_ij min(t_i,t_j) = sum_i (2(N-i)+1) t_i for sorted times
        const std::size_t n = times.size();
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += (2.0 * (n - 1 - i) + 1.0) * times[i];
        return sigma_n / static_cast<double>(n) * std::sqrt(sum);
    }
};

/// Basket option under correlated Bachelier assets: the terminal basket
/// value stays normal, so the generalized formula applies directly.
inline double basket_price(OptionKind kind, double strike, const BasketSpec& spec) {
    spec.validate();
    return price_bachelier_general(kind, strike, spec.mean(), spec.sd());
}

/// Spread option: two-asset basket with weights (1, -1).
inline double spread_price(OptionKind kind, double strike, double forward_1, double forward_2,
                           double vol_1, double vol_2, double corr_12, double expiry) {
    BasketSpec spec;
    spec.weights = {1.0, -1.0};
    spec.forwards = {forward_1, forward_2};
    spec.vols = {vol_1, vol_2};
    spec.correlation = {{1.0, corr_12}, {corr_12, 1.0}};
    spec.expiry = expiry;
    return basket_price(kind, strike, spec);
}

/// Asian option on the average forward; the average is normal with mean F0.
inline double asian_price(OptionKind kind, double strike, double forward, double sigma_n,
                          const AsianSpec& spec) {
    if (!(sigma_n > 0.0)) throw std::invalid_argument("asian_price: sigma must be > 0");
    return price_bachelier_general(kind, strike, forward, spec.average_sd(sigma_n));
}

}  // namespace bachelier
