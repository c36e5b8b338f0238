#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bachelier/barrier.hpp"
#include "bachelier/greeks.hpp"
#include "bachelier/implied_vol.hpp"
#include "bachelier/model.hpp"
#include "bachelier/nsvh.hpp"
#include "bachelier/sabr.hpp"
#include "bachelier/vol_convert.hpp"

namespace bachelier {

/// A named numeric table; the CLI serializes these to CSV.
struct FigureTable {
    std::string id;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

// vol that reprices the target model to the common ATM price 0.2 at F0 = 1
inline double dbs_vol_for_atm_price(double target, double beta, double forward, double expiry) {
    if (beta == 0.0) return target * std::sqrt(2.0 * M_PI / expiry);  // bachelier
    const double df = beta * forward + (1.0 - beta) * forward;        // anchor = forward
    return 2.0 / (beta * std::sqrt(expiry)) * norm_quantile(0.5 * (target * beta / df + 1.0));
}

}  // namespace detail

/// BS volatility skew implied by the Bachelier/DBS/BS family at fixed
/// sigma = 0.5 and beta in {0, 1/3, 2/3, 1} (anchor = F0 = 1, T = 1).
inline FigureTable figure_skew() {
    FigureTable t{"fig1",
                  {"strike", "bs_vol_beta_0", "bs_vol_beta_1_3", "bs_vol_beta_2_3", "bs_vol_beta_1"},
                  {}};
    const double sigma = 0.5, forward = 1.0, expiry = 1.0;
    for (double k : detail::linspace(0.4, 2.4, 101)) {
        std::vector<double> row{k};
        for (double beta : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0})
            row.push_back(dbs_to_bs_smile(k, sigma, beta, forward, forward, expiry).vol);
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Accuracy of the BS -> Bachelier conversions at sigma_bs = 2, T = 1:
/// exact (price-matching) value against the improved and HKL formulas.
inline FigureTable figure_conversion() {
    FigureTable t{"fig2", {"strike", "exact", "improved", "hkl"}, {}};
    const double sigma_bs = 2.0, forward = 1.0, expiry = 1.0;
    const ModelSpec source = BlackModel{sigma_bs};
    for (double k : detail::linspace(0.05, 4.0, 200)) {
        t.rows.push_back({k, exact_convert(source, VolTarget::bachelier(), k, forward, expiry),
                          bs_to_bachelier_smile(k, sigma_bs, forward, expiry, Bs2NVariant::Improved),
                          bs_to_bachelier_smile(k, sigma_bs, forward, expiry, Bs2NVariant::Hkl)});
    }
    return t;
}

/// Call delta across strikes with every model repriced to the BS price at
/// sigma_bs = 0.5 (F0 = T = 1).
inline FigureTable figure_delta() {
    FigureTable t{"fig3",
                  {"strike", "delta_beta_0", "delta_beta_1_3", "delta_beta_2_3", "delta_beta_1"},
                  {}};
    const double sigma_bs = 0.5, forward = 1.0, expiry = 1.0;
    for (double k : detail::linspace(0.2, 3.0, 141)) {
        const OptionKind side = otm_side(k, forward);
        const double price = price_black(side, k, forward, sigma_bs, expiry);
        std::vector<double> row{k};
        for (double beta : {0.0, 1.0 / 3.0, 2.0 / 3.0}) {
            const double vol = dbs_ivol(price, side, k, forward, beta, forward, expiry);
            row.push_back(greeks_dbs(OptionKind::Call, k, forward, {vol, beta, forward}, expiry).delta);
        }
        row.push_back(greeks_black(OptionKind::Call, k, forward, sigma_bs, expiry).delta);
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Knock-out prices against the barrier level with each model calibrated to
/// the ATM vanilla price 0.2 (F0 = K = T = 1): down-and-out puts for
/// levels below 1, up-and-out calls above.
inline FigureTable figure_barrier() {
    FigureTable t{"fig4", {"barrier", "price_beta_0", "price_beta_1_3", "price_beta_2_3", "price_beta_1"}, {}};
    const double forward = 1.0, strike = 1.0, expiry = 1.0, atm_price = 0.2;
    std::vector<double> levels;
    for (int i = 1; i <= 19; ++i) levels.push_back(0.05 * i);         // 0.05 .. 0.95
    for (int i = 1; i <= 19; ++i) levels.push_back(1.0 + 0.05 * i);   // 1.05 .. 1.95
    for (double level : levels) {
        const bool is_down = level < forward;
        const OptionKind kind = is_down ? OptionKind::Put : OptionKind::Call;
        const BarrierSpec spec{is_down ? BarrierDirection::Down : BarrierDirection::Up,
                               BarrierKnock::Out, level};
        std::vector<double> row{level};
        for (double beta : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
            const double vol = detail::dbs_vol_for_atm_price(atm_price, beta, forward, expiry);
            double price;
            if (beta == 0.0) {
                price = barrier_price_bachelier(kind, spec, strike, forward, vol, expiry).price;
            } else if (beta == 1.0) {
                price = barrier_price_black(kind, spec, strike, forward, vol, expiry).price;
            } else {
                price = barrier_price_dbs(kind, spec, strike, forward, {vol, beta, forward}, expiry)
                            .price;
            }
            row.push_back(price);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Bachelier vol smiles of the NSVh and normal-SABR models anchored to
/// sigma_n(F0) = 20 at F0 = 100, T = 1: nu sweep at rho = 0.1 and rho sweep
/// at nu = 0.2.
inline FigureTable figure_smile() {
    FigureTable t{"fig5", {"strike"}, {}};
    const double forward = 100.0, expiry = 1.0, atm_vol = 20.0;
    struct Scenario {
        std::string label;
        double rho, nu;
    };
    std::vector<Scenario> scenarios;
    for (double nu : {0.1, 0.2, 0.4}) {
        std::string tag = nu == 0.1 ? "0_1" : nu == 0.2 ? "0_2" : "0_4";
        scenarios.push_back({"nu_" + tag, 0.1, nu});
    }
    for (double rho : {-0.3, 0.1, 0.5}) {
        std::string tag = rho < 0.0 ? "m0_3" : rho == 0.1 ? "0_1" : "0_5";
        scenarios.push_back({"rho_" + tag, rho, 0.2});
    }
    for (const auto& s : scenarios) t.columns.push_back("nsvh_" + s.label);
    for (const auto& s : scenarios) t.columns.push_back("sabr_" + s.label);
    for (double strike : detail::linspace(40.0, 160.0, 61)) {
        std::vector<double> row{strike};
        const OptionKind side = otm_side(strike, forward);
        for (const auto& s : scenarios) {
            const double price =
                nsvh_price_atm_anchored(side, strike, forward, atm_vol, s.rho, s.nu, expiry);
            row.push_back(bachelier_ivol(price, side, strike, forward, expiry));
        }
        for (const auto& s : scenarios)
            row.push_back(sabr_vol_atm_anchored(strike, forward, atm_vol, s.rho, s.nu, expiry));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline FigureTable figure_table(const std::string& id) {
    if (id == "fig1") return figure_skew();
    if (id == "fig2") return figure_conversion();
    if (id == "fig3") return figure_delta();
    if (id == "fig4") return figure_barrier();
    if (id == "fig5") return figure_smile();
    throw std::invalid_argument("unknown figure id: " + id);
}

}  // namespace bachelier
