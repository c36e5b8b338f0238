#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace bachelier {

enum class OptionKind { Call, Put };

/// Payoff sign: +1 for a call, -1 for a put.
inline double theta(OptionKind kind) { return kind == OptionKind::Call ? 1.0 : -1.0; }

inline OptionKind otm_side(double strike, double forward) {
    return strike >= forward ? OptionKind::Call : OptionKind::Put;
}

/// A vanilla contract. Strikes may be negative; expiry is in years.
struct Instrument {
    double strike = 0.0;
    double expiry = 0.0;
    OptionKind kind = OptionKind::Call;
};

inline double intrinsic_value(OptionKind kind, double strike, double forward) {
    return std::max(theta(kind) * (forward - strike), 0.0);
}

/// Forward of the asset under continuous rate r and carry q.
inline double forward_from_spot(double spot, double rate, double carry, double expiry) {
    if (expiry < 0.0) throw std::invalid_argument("forward_from_spot: expiry must be >= 0");
    return std::exp((rate - carry) * expiry) * spot;
}

inline double discount(double undiscounted, double rate, double expiry) {
    if (expiry < 0.0) throw std::invalid_argument("discount: expiry must be >= 0");
    return std::exp(-rate * expiry) * undiscounted;
}

/// Forward, rates and (optionally) the spot they were derived from.
/// Pricing works on the forward; the spot and rates only matter at the
/// report boundary (discounting, spot delta).
struct MarketSnapshot {
    double forward = 0.0;
    double rate = 0.0;
    double carry = 0.0;
    std::optional<double> spot;

    static MarketSnapshot from_forward(double forward, double rate = 0.0, double carry = 0.0) {
        return {forward, rate, carry, std::nullopt};
    }
    static MarketSnapshot from_spot(double spot, double rate, double carry, double expiry) {
        MarketSnapshot m{forward_from_spot(spot, rate, carry, expiry), rate, carry, spot};
        return m;
    }
    /// Checks forward == e^{(r-q)T} * spot when both are given.
    void validate(double expiry) const {
        if (!spot) return;
        const double implied = forward_from_spot(*spot, rate, carry, expiry);
        if (std::abs(implied - forward) > 1e-12 * std::max(1.0, std::abs(forward)))
            throw std::invalid_argument("MarketSnapshot: forward inconsistent with spot and rates");
    }
};

struct GreeksBlock {
    double delta = 0.0;  // dPrice/dF0
    double gamma = 0.0;  // d2Price/dF0^2
    double vega = 0.0;   // dPrice/dVol (the model's own vol parameter)
    double theta = 0.0;  // -dPrice/dT, undiscounted convention
};

struct PriceReport {
    double undiscounted = 0.0;
    double discounted = 0.0;
    std::optional<GreeksBlock> greeks;
    std::optional<double> stderr_estimate;
};

inline PriceReport make_report(double undiscounted, double rate, double expiry) {
    return {undiscounted, discount(undiscounted, rate, expiry), std::nullopt, std::nullopt};
}

}  // namespace bachelier
