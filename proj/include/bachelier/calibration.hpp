#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bachelier/implied_vol.hpp"
#include "bachelier/nsvh.hpp"
#include "bachelier/sabr.hpp"

namespace bachelier {

enum class SmileModel { SabrNormal, Nsvh };

struct VolQuote {
    double strike = 0.0;
    double vol = 0.0;  // Bachelier vol
};

struct CalibrationResult {
    double sigma0 = 0.0;
    double rho = 0.0;
    double nu = 0.0;
    double residual_norm = 0.0;  // sqrt of the sum of squared vol residuals
    bool converged = false;
    bool rho_identifiable = true;  // false when the fitted smile is flat (nu ~ 0)
};

namespace detail {

struct Bounds {
    double lo, hi;
    double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
};

// Levenberg-Marquardt with numeric Jacobian and box constraints; small and
// deterministic, which is all a 3-parameter smile fit needs.
template <int N>
struct LmFit {
    std::array<double, N> params{};
    double sse = 0.0;
    bool converged = false;
};

template <int N, typename Residuals>
LmFit<N> levenberg_marquardt(Residuals&& residuals, std::array<double, N> p,
                             const std::array<Bounds, N>& bounds) {
    for (int i = 0; i < N; ++i) p[i] = bounds[i].clamp(p[i]);
    auto sse_of = [](const std::vector<double>& r) {
        double s = 0.0;
        for (double x : r) s += x * x;
        return s;
    };
    std::vector<double> f = residuals(p);
    double sse = sse_of(f);
    const std::size_t m = f.size();
    double lambda = 1e-3;
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        // numeric Jacobian, forward differences
        std::array<std::vector<double>, N> jac;
        for (int j = 0; j < N; ++j) {
            const double h = 1e-7 * (1.0 + std::abs(p[j]));
            auto pj = p;
            pj[j] = bounds[j].clamp(p[j] + h);
            const double hj = pj[j] - p[j];
            std::vector<double> fj = residuals(pj);
            jac[j].resize(m);
            for (std::size_t i = 0; i < m; ++i)
                jac[j][i] = hj != 0.0 ? (fj[i] - f[i]) / hj : 0.0;
        }
        std::array<std::array<double, N>, N> jtj{};
        std::array<double, N> jtf{};
        for (int a = 0; a < N; ++a) {
            for (int b = 0; b < N; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < m; ++i) s += jac[a][i] * jac[b][i];
                jtj[a][b] = s;
            }
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += jac[a][i] * f[i];
            jtf[a] = s;
        }
        bool improved = false;
        for (int attempt = 0; attempt < 25 && !improved; ++attempt) {
            // solve (JtJ + lambda diag(JtJ)) dp = -Jtf by Gaussian elimination
            std::array<std::array<double, N + 1>, N> aug{};
            for (int a = 0; a < N; ++a) {
                for (int b = 0; b < N; ++b) aug[a][b] = jtj[a][b];
                aug[a][a] += lambda * std::max(jtj[a][a], 1e-12);
                aug[a][N] = -jtf[a];
            }
            bool singular = false;
            for (int col = 0; col < N; ++col) {
                int pivot = col;
                for (int r = col + 1; r < N; ++r)
                    if (std::abs(aug[r][col]) > std::abs(aug[pivot][col])) pivot = r;
                std::swap(aug[col], aug[pivot]);
                if (std::abs(aug[col][col]) < 1e-300) { singular = true; break; }
                for (int r = col + 1; r < N; ++r) {
                    const double factor = aug[r][col] / aug[col][col];
                    for (int c = col; c <= N; ++c) aug[r][c] -= factor * aug[col][c];
                }
            }
            std::array<double, N> dp{};
            if (!singular) {
                for (int r = N - 1; r >= 0; --r) {
                    double s = aug[r][N];
                    for (int c = r + 1; c < N; ++c) s -= aug[r][c] * dp[c];
                    dp[r] = s / aug[r][r];
                }
            }
            auto p_new = p;
            double step = 0.0;
            for (int j = 0; j < N; ++j) {
                p_new[j] = bounds[j].clamp(p[j] + dp[j]);
                step = std::max(step, std::abs(p_new[j] - p[j]) / (1.0 + std::abs(p[j])));
            }
            std::vector<double> f_new = residuals(p_new);
            const double sse_new = sse_of(f_new);
            if (sse_new <= sse) {
                const double gain = sse - sse_new;
                p = p_new;
                f = std::move(f_new);
                sse = sse_new;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                if (step < 1e-11 || gain < 1e-26 * (1.0 + sse)) converged = true;
            } else {
                lambda *= 4.0;
                if (lambda > 1e12) break;
            }
        }
        if (!improved) break;  // stalled; report current point
    }
    return {p, sse, converged};
}

}  // namespace detail

/// Least-squares calibration of (sigma0, rho, nu) to a Bachelier vol smile.
/// With anchor_atm the ATM quote pins sigma0 analytically and only (rho, nu)
/// are fitted. Multi-start over (rho, nu) guards against local minima.
inline CalibrationResult calibrate_smile(SmileModel model, const std::vector<VolQuote>& quotes,
                                         double forward, double expiry, bool anchor_atm = false) {
    if (!(expiry > 0.0)) throw std::invalid_argument("calibrate_smile: expiry must be > 0");
    const std::size_t min_quotes = anchor_atm ? 2 : 3;
    if (quotes.size() < min_quotes)
        throw std::invalid_argument("calibrate_smile: under-determined, need more quotes");

    double atm_vol = 0.0;
    if (anchor_atm) {
        bool found = false;
        for (const auto& q : quotes) {
            if (std::abs(q.strike - forward) <= 1e-10 * std::max(1.0, std::abs(forward))) {
                atm_vol = q.vol;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("calibrate_smile: anchor_atm requires an ATM quote");
    }

    auto model_vol = [&](double strike, double sigma0, double rho, double nu) {
        if (model == SmileModel::SabrNormal)
            return sabr_normal_case_vol(strike, forward, sigma0, rho, nu, expiry);
        NsvhParams p{sigma0, rho, nu};
        const OptionKind kind = otm_side(strike, forward);
        return bachelier_ivol(nsvh_price(kind, strike, forward, p, expiry), kind, strike, forward,
                              expiry);
    };
    auto sigma0_from_atm = [&](double rho, double nu) {
        return model == SmileModel::SabrNormal ? sabr_sigma0_for_atm(atm_vol, rho, nu, expiry)
                                               : nsvh_sigma0_for_atm(atm_vol, rho, nu, expiry);
    };

    // seed sigma0 from the quote closest to the money
    double sigma0_seed = quotes.front().vol;
    double best_dist = std::abs(quotes.front().strike - forward);
    for (const auto& q : quotes) {
        if (std::abs(q.strike - forward) < best_dist) {
            best_dist = std::abs(q.strike - forward);
            sigma0_seed = q.vol;
        }
    }
    const std::array<std::pair<double, double>, 5> starts = {
        std::pair{0.0, 0.05}, {0.0, 0.5}, {-0.5, 0.5}, {0.5, 0.5}, {0.0, 2.0}};
    const detail::Bounds rho_b{-0.99, 0.99}, nu_b{0.0, 10.0}, sig_b{1e-10, 1e10};

    CalibrationResult best;
    double best_sse = -1.0;
    for (const auto& [rho_start, nu_start] : starts) {
        double sigma0 = 0.0, rho = 0.0, nu = 0.0, sse = 0.0;
        bool conv = false;
        if (anchor_atm) {
            auto resid = [&](const std::array<double, 2>& p) {
                std::vector<double> r(quotes.size());
                const double s0 = sigma0_from_atm(p[0], p[1]);
                for (std::size_t i = 0; i < quotes.size(); ++i)
                    r[i] = model_vol(quotes[i].strike, s0, p[0], p[1]) - quotes[i].vol;
                return r;
            };
            auto fit = detail::levenberg_marquardt<2>(resid, {rho_start, nu_start}, {rho_b, nu_b});
            rho = fit.params[0];
            nu = fit.params[1];
            sigma0 = sigma0_from_atm(rho, nu);
            sse = fit.sse;
            conv = fit.converged;
        } else {
            auto resid = [&](const std::array<double, 3>& p) {
                std::vector<double> r(quotes.size());
                for (std::size_t i = 0; i < quotes.size(); ++i)
                    r[i] = model_vol(quotes[i].strike, p[0], p[1], p[2]) - quotes[i].vol;
                return r;
            };
            auto fit = detail::levenberg_marquardt<3>(resid, {sigma0_seed, rho_start, nu_start},
                                                      {sig_b, rho_b, nu_b});
            sigma0 = fit.params[0];
            rho = fit.params[1];
            nu = fit.params[2];
            sse = fit.sse;
            conv = fit.converged;
        }
        if (best_sse < 0.0 || sse < best_sse) {
            best_sse = sse;
            best = {sigma0, rho, nu, std::sqrt(sse), conv, nu > 1e-6};
        }
    }
    return best;
}

}  // namespace bachelier
