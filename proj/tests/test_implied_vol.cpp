#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bachelier/implied_vol.hpp"
#include "bachelier/vanilla.hpp"

using namespace bachelier;
using Catch::Approx;

namespace {
constexpr OptionKind kCall = OptionKind::Call;
constexpr OptionKind kPut = OptionKind::Put;
}

TEST_CASE("rational approximation coefficients are pinned") {
    // the published constants, asserted digit for digit
    CHECK(kIvolNumCoeffs[0] == 3.994961687345134e-1);
    CHECK(kIvolNumCoeffs[1] == 2.100960795068497e+1);
    CHECK(kIvolNumCoeffs[2] == 4.980340217855084e+1);
    CHECK(kIvolNumCoeffs[3] == 5.988761102690991e+2);
    CHECK(kIvolNumCoeffs[4] == 1.848489695437094e+3);
    CHECK(kIvolNumCoeffs[5] == 6.106322407867059e+3);
    CHECK(kIvolNumCoeffs[6] == 2.493415285349361e+4);
    CHECK(kIvolNumCoeffs[7] == 1.266458051348246e+4);
    CHECK(kIvolDenCoeffs[0] == 4.990534153589422e+1);
    CHECK(kIvolDenCoeffs[1] == 3.093573936743112e+1);
    CHECK(kIvolDenCoeffs[2] == 1.495105008310999e+3);
    CHECK(kIvolDenCoeffs[3] == 1.323614537899738e+3);
    CHECK(kIvolDenCoeffs[4] == 1.598919697679745e+4);
    CHECK(kIvolDenCoeffs[5] == 2.392008891720782e+4);
    CHECK(kIvolDenCoeffs[6] == 3.608817108375034e+3);
    CHECK(kIvolDenCoeffs[7] == -2.067719486400926e+2);
    CHECK(kIvolDenCoeffs[8] == 1.174240599306013e+1);
    CHECK(std::abs(h_of_eta(1.0) - 1.0) <= 5e-15);
}

TEST_CASE("eta of the straddle ratio") {
    CHECK(eta_of_v(0.0) == 1.0);
    CHECK(eta_of_v(0.5) == Approx(0.5 / std::atanh(0.5)).epsilon(1e-15));

    SECTION("branches agree at the threshold") {
        const double eps = 1e-9;
        CHECK(eta_of_v(1e-3 + eps) == Approx(eta_of_v(1e-3 - eps)).margin(1e-14));
    }
    SECTION("domain") {
        CHECK_THROWS_AS(eta_of_v(-0.1), std::invalid_argument);
        CHECK_THROWS_AS(eta_of_v(1.0), std::invalid_argument);
    }
}

TEST_CASE("bachelier implied volatility") {
    SECTION("ATM inversion is the closed form") {
        const double price = price_bachelier(kCall, 1.0, 1.0, 0.5, 1.0);
        const double iv = bachelier_ivol(price, kCall, 1.0, 1.0, 1.0);
        CHECK(iv == Approx(price * std::sqrt(2.0 * M_PI)).epsilon(1e-13));
        CHECK(iv == Approx(0.5).epsilon(1e-13));
    }
    SECTION("round trip over the quoted accuracy region") {
        double worst_wide = 0.0, worst_core = 0.0;
        for (double sigma : {0.01, 0.1, 0.5, 1.0, 2.0}) {
            for (double t : {0.01, 0.25, 1.0, 5.0}) {
                for (double d = -7.7; d <= 7.7; d += 0.1) {
                    const double k = 1.0 - d * sigma * std::sqrt(t);
                    const OptionKind side = otm_side(k, 1.0);
                    const double price = price_bachelier(side, k, 1.0, sigma, t);
                    const double rel =
                        std::abs(bachelier_ivol(price, side, k, 1.0, t) - sigma) / sigma;
                    worst_wide = std::max(worst_wide, rel);
                    if (std::abs(d) <= 1.46) worst_core = std::max(worst_core, rel);
                }
            }
        }
        CHECK(worst_wide <= 1e-9);
        CHECK(worst_core <= 1e-12);
    }
    SECTION("monotone in the input price") {
        double prev = 0.0;
        for (double price = 0.05; price <= 0.6; price += 0.05) {
            const double iv = bachelier_ivol(price, kCall, 1.2, 1.0, 1.0);
            CHECK(iv > prev);
            prev = iv;
        }
    }
    SECTION("straddle quote path matches the call path") {
        const double c = price_bachelier(kCall, 1.3, 1.0, 0.4, 2.0);
        const double p = price_bachelier(kPut, 1.3, 1.0, 0.4, 2.0);
        CHECK(bachelier_ivol_straddle(c + p, 1.3, 1.0, 2.0) ==
              Approx(bachelier_ivol(c, kCall, 1.3, 1.0, 2.0)).epsilon(1e-14));
    }
    SECTION("price at or below intrinsic is rejected") {
        CHECK_THROWS_AS(bachelier_ivol(1.0 - 0.8, kCall, 0.8, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(bachelier_ivol(0.1, kCall, 0.8, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(bachelier_ivol(0.0, kCall, 1.2, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("black implied volatility") {
    SECTION("ATM closed-form seed makes the round trip exact") {
        const double price = price_black(kCall, 1.0, 1.0, 0.37, 2.0);
        CHECK(black_ivol(price, kCall, 1.0, 1.0, 2.0) == Approx(0.37).epsilon(1e-12));
    }
    SECTION("round trip over |d1| <= 5") {
        for (double sigma : {0.1, 0.5, 1.5}) {
            for (double t : {0.25, 1.0, 4.0}) {
                const double st = sigma * std::sqrt(t);
                for (double d1 = -5.0; d1 <= 5.0; d1 += 0.25) {
                    const double k = std::exp(0.5 * st * st - d1 * st);
                    const OptionKind side = otm_side(k, 1.0);
                    const double price = price_black(side, k, 1.0, sigma, t);
                    CHECK(black_ivol(price, side, k, 1.0, t) == Approx(sigma).epsilon(1e-9));
                }
            }
        }
    }
    SECTION("price bounds") {
        CHECK_THROWS_AS(black_ivol(1e-30, kCall, 1.2, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(black_ivol(0.2 + 1e-30, kCall, 0.8, 1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(black_ivol(1.0, kCall, 0.8, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("displaced BS implied volatility") {
    SECTION("beta = 1 equals the Black inversion") {
        const double price = price_black(kCall, 1.2, 1.0, 0.45, 1.0);
        CHECK(dbs_ivol(price, kCall, 1.2, 1.0, 1.0, 5.0, 1.0) ==
              Approx(black_ivol(price, kCall, 1.2, 1.0, 1.0)).epsilon(1e-14));
    }
    SECTION("round trip") {
        const DbsParams p{0.55, 0.4, 1.0};
        for (double k : {0.5, 0.9, 1.0, 1.4, 2.2}) {
            const OptionKind side = otm_side(k, 1.0);
            const double price = price_dbs(side, k, 1.0, p, 1.5);
            CHECK(dbs_ivol(price, side, k, 1.0, p.beta, p.anchor, 1.5) ==
                  Approx(p.sigma).epsilon(1e-9));
        }
    }
    SECTION("beta = 0 delegates to the Bachelier inverter over the anchor") {
        const double price = price_bachelier(kCall, 1.1, 1.0, 0.8, 1.0);
        CHECK(dbs_ivol(price, kCall, 1.1, 1.0, 0.0, 2.0, 1.0) ==
              Approx(bachelier_ivol(price, kCall, 1.1, 1.0, 1.0) / 2.0).epsilon(1e-14));
    }
}
