#pragma once

// Test-side oracles, kept independent of the library's own numerics.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// Composite Simpson quadrature in long double.
template <typename F>
long double simpson(F&& f, long double a, long double b, int n = 4000) {
    if (n % 2) ++n;
    const long double h = (b - a) / n;
    long double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

/// Reference standard normal CDF: Taylor series near zero, Laplace continued
/// fraction for the Mills ratio in the tails, evaluated in long double.
inline long double norm_cdf_ref(long double z) {
    const long double inv_sqrt_2pi = 0.398942280401432677939946L;
    const long double az = std::fabs(z);
    const long double pdf = inv_sqrt_2pi * std::exp(-0.5L * z * z);
    if (az < 3.0L) {
        // N(z) = 1/2 + n(z) * sum z^(2k+1) / (1*3*5*...*(2k+1))
        long double term = z, sum = z, zz = z * z;
        for (int k = 1; k < 400; ++k) {
            term *= zz / (2 * k + 1);
            sum += term;
            if (std::fabs(term) < 1e-24L * std::fabs(sum)) break;
        }
        return 0.5L + pdf * sum;
    }
    // Mills ratio continued fraction: Q(z) = n(z) / (z + 1/(z + 2/(z + ...)))
    long double cf = 0.0L;
    for (int k = 400; k >= 1; --k) cf = k / (az + cf);
    const long double q = pdf / (az + cf);
    return z > 0 ? 1.0L - q : q;
}

/// Bachelier price by quadrature of the payoff against the normal density.
inline long double bachelier_price_quad(int theta, long double strike, long double mean,
                                        long double sd) {
    const long double lo = theta > 0 ? std::max(strike, mean - 14 * sd) : mean - 14 * sd;
    const long double hi = theta > 0 ? mean + 14 * sd : std::min(strike, mean + 14 * sd);
    if (hi <= lo) return 0.0L;
    auto integrand = [&](long double x) {
        const long double u = (x - mean) / sd;
        return theta * (x - strike) * 0.398942280401432677939946L * std::exp(-0.5L * u * u) / sd;
    };
    return simpson(integrand, lo, hi, 8000);
}

}  // namespace oracle
