#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "bachelier/market.hpp"
#include "bachelier/nsvh.hpp"
#include "bachelier/sabr.hpp"
#include "bachelier/vanilla.hpp"

namespace bachelier {

struct BachelierModel {
    double sigma = 0.0;  // price units per sqrt(year)
};

struct BlackModel {
    double sigma = 0.0;  // 1/sqrt(year)
};

/// Tagged union over the supported model parameterizations.
using ModelSpec = std::variant<BachelierModel, BlackModel, DbsParams, CevParams, SabrParams,
                               NsvhParams>;

inline std::string model_name(const ModelSpec& model) {
    struct Visitor {
        std::string operator()(const BachelierModel&) const { return "bachelier"; }
        std::string operator()(const BlackModel&) const { return "bs"; }
        std::string operator()(const DbsParams&) const { return "dbs"; }
        std::string operator()(const CevParams&) const { return "cev"; }
        std::string operator()(const SabrParams&) const { return "sabr"; }
        std::string operator()(const NsvhParams&) const { return "nsvh"; }
    };
    return std::visit(Visitor{}, model);
}

/// Undiscounted vanilla price under any model. SABR prices through its
/// equivalent Bachelier volatility.
inline double price_vanilla(const ModelSpec& model, OptionKind kind, double strike, double forward,
                            double expiry) {
    struct Visitor {
        OptionKind kind;
        double strike, forward, expiry;
        double operator()(const BachelierModel& m) const {
            return price_bachelier(kind, strike, forward, m.sigma, expiry);
        }
        double operator()(const BlackModel& m) const {
            return price_black(kind, strike, forward, m.sigma, expiry);
        }
        double operator()(const DbsParams& m) const {
            return price_dbs(kind, strike, forward, m, expiry);
        }
        double operator()(const CevParams& m) const {
            return price_cev(kind, strike, forward, m, expiry);
        }
        double operator()(const SabrParams& m) const {
            const double vol = sabr_bachelier_vol(strike, forward, m, expiry);
            return price_bachelier(kind, strike, forward, vol, expiry);
        }
        double operator()(const NsvhParams& m) const {
            return nsvh_price(kind, strike, forward, m, expiry);
        }
    };
    return std::visit(Visitor{kind, strike, forward, expiry}, model);
}

}  // namespace bachelier
