#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bachelier/vol_convert.hpp"

using namespace bachelier;
using Catch::Approx;

namespace {
constexpr OptionKind kCall = OptionKind::Call;
}

TEST_CASE("dbs to bachelier ATM conversion") {
    SECTION("beta -> 0 limit is anchor * sigma") {
        CHECK(dbs_to_bachelier_atm(0.5, 1e-8, 2.0, 1.0, 1.0) == Approx(1.0).epsilon(1e-12));
    }
    SECTION("result reprices the DBS ATM option under Bachelier") {
        for (double beta : {1.0, 0.5, 1e-3}) {
            const double sigma_n = dbs_to_bachelier_atm(0.6, beta, 1.0, 1.0, 2.0);
            const double bach = price_bachelier(kCall, 1.0, 1.0, sigma_n, 2.0);
            const double dbs = price_dbs(kCall, 1.0, 1.0, {0.6, beta, 1.0}, 2.0);
            CHECK(bach == Approx(dbs).margin(1e-12));
        }
    }
    SECTION("beta = 1 equals the BS -> Bachelier ATM conversion") {
        const double sigma_n = dbs_to_bachelier_atm(0.5, 1.0, 123.0, 1.0, 1.0);
        // equate C_bs(F0) = F0(2N(vol sqrt(T)/2)-1) with the Bachelier ATM price
        const double expected =
            std::sqrt(2.0 * M_PI) * (2.0 * norm_cdf(0.25) - 1.0);
        CHECK(sigma_n == Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("dbs to bs ATM conversion") {
    SECTION("beta = 1 is the identity") {
        CHECK(dbs_to_bs_atm(0.47, 1.0, 9.0, 1.3, 2.0) == Approx(0.47).epsilon(1e-12));
    }
    SECTION("result reprices the DBS ATM option under Black") {
        for (double beta : {0.7, 0.2}) {
            const double sigma_bs = dbs_to_bs_atm(0.5, beta, 1.0, 1.0, 1.0);
            CHECK(price_black(kCall, 1.0, 1.0, sigma_bs, 1.0) ==
                  Approx(price_dbs(kCall, 1.0, 1.0, {0.5, beta, 1.0}, 1.0)).margin(1e-12));
        }
    }
    SECTION("small beta agrees with the exact converter") {
        const double approx_vol = dbs_to_bs_atm(0.5, 1e-3, 1.0, 1.0, 1.0);
        const double exact =
            exact_convert(DbsParams{0.5, 1e-3, 1.0}, VolTarget::bs(), 1.0, 1.0, 1.0);
        CHECK(approx_vol == Approx(exact).margin(1e-10));
    }
}

TEST_CASE("bs to bachelier smile conversion") {
    const double sigma_bs = 2.0, forward = 1.0, expiry = 1.0;
    const ModelSpec source = BlackModel{sigma_bs};

    SECTION("improved max error is below the hkl max error on the stress grid") {
        double max_improved = 0.0, max_hkl = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double k = 0.05 + (4.0 - 0.05) * i / 199.0;
            const double exact = exact_convert(source, VolTarget::bachelier(), k, forward, expiry);
            max_improved = std::max(
                max_improved,
                std::abs(bs_to_bachelier_smile(k, sigma_bs, forward, expiry) - exact));
            max_hkl = std::max(
                max_hkl, std::abs(bs_to_bachelier_smile(k, sigma_bs, forward, expiry,
                                                        Bs2NVariant::Hkl) -
                                  exact));
        }
        CHECK(max_improved < max_hkl);
    }
    SECTION("per-strike dominance away from the deep left wing") {
        for (double k = 0.09; k <= 4.0; k += 0.019849) {
            const double exact = exact_convert(source, VolTarget::bachelier(), k, forward, expiry);
            const double e_improved =
                std::abs(bs_to_bachelier_smile(k, sigma_bs, forward, expiry) - exact);
            const double e_hkl = std::abs(
                bs_to_bachelier_smile(k, sigma_bs, forward, expiry, Bs2NVariant::Hkl) - exact);
            CHECK(e_improved <= e_hkl);
        }
    }
    SECTION("ATM value and accuracy") {
        const double atm = bs_to_bachelier_smile(1.0, 1.0, 1.0, 1.0);
        CHECK(atm == Approx(1.0 / (1.0 + 1.0 / 24.0)).epsilon(1e-15));
        const double exact = exact_convert(ModelSpec{BlackModel{1.0}}, VolTarget::bachelier(), 1.0,
                                           1.0, 1.0);
        CHECK(atm == Approx(exact).epsilon(1e-3));
    }
    SECTION("variants coincide at vanishing expiry") {
        const double t = 1e-4;
        for (double k : {0.5, 1.3}) {
            const double a = bs_to_bachelier_smile(k, 2.0, 1.0, t);
            const double b = bs_to_bachelier_smile(k, 2.0, 1.0, t, Bs2NVariant::Hkl);
            const double exact = exact_convert(ModelSpec{BlackModel{2.0}}, VolTarget::bachelier(),
                                               k, 1.0, t);
            CHECK(a == Approx(b).margin(2e-4));
            CHECK(a == Approx(exact).margin(1e-6));
        }
    }
    SECTION("rejects nonpositive strike") {
        CHECK_THROWS_AS(bs_to_bachelier_smile(0.0, 0.5, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("bachelier to bs smile conversion") {
    SECTION("inverse consistency within half a percent") {
        for (double k = 0.5; k <= 2.0; k += 0.05) {
            const double bs = bachelier_to_bs_smile(k, 0.5, 1.0, 1.0).vol;
            const double back = bs_to_bachelier_smile(k, bs, 1.0, 1.0);
            CHECK(back == Approx(0.5).epsilon(5e-3));
        }
    }
    SECTION("k = 1 reduction") {
        CHECK(bachelier_to_bs_smile(1.0, 0.5, 1.0, 1.0).vol ==
              Approx(0.5 * (1.0 + 0.25 / 24.0)).epsilon(1e-15));
    }
    SECTION("the Lee bound flags the low-strike wing") {
        const auto flagged = bachelier_to_bs_smile(0.01, 0.5, 1.0, 1.0);
        CHECK(flagged.lee_bound_warning);
        CHECK(flagged.vol > lee_volatility_bound(0.01, 1.0));
        CHECK(!bachelier_to_bs_smile(0.8, 0.5, 1.0, 1.0).lee_bound_warning);
    }
}

TEST_CASE("dbs smile conversions") {
    SECTION("beta = 1 reduces to the improved bs conversion") {
        for (double k : {0.6, 1.0, 1.8})
            CHECK(dbs_to_bachelier_smile(k, 0.5, 1.0, 77.0, 1.0, 1.0) ==
                  Approx(bs_to_bachelier_smile(k, 0.5, 1.0, 1.0)).epsilon(1e-14));
    }
    SECTION("beta = 0 gives the flat normal smile anchor * sigma") {
        for (double k : {0.6, 1.4})
            CHECK(dbs_to_bachelier_smile(k, 0.5, 0.0, 2.0, 1.0, 1.0) == Approx(1.0).epsilon(1e-15));
    }
    SECTION("accuracy against the exact converter at beta = 2/3") {
        const DbsParams p{0.5, 2.0 / 3.0, 1.0};
        for (double k = 0.5; k <= 2.0; k += 0.05) {
            const double approx_vol = dbs_to_bachelier_smile(k, p.sigma, p.beta, p.anchor, 1.0, 1.0);
            const double exact = exact_convert(p, VolTarget::bachelier(), k, 1.0, 1.0);
            CHECK(approx_vol == Approx(exact).epsilon(2e-3));
        }
    }
    SECTION("dbs to bs: beta = 1 identity, beta = 0 reduction") {
        for (double k : {0.7, 1.2}) {
            CHECK(dbs_to_bs_smile(k, 0.5, 1.0, 3.0, 1.0, 1.0).vol == Approx(0.5).margin(1e-12));
            CHECK(dbs_to_bs_smile(k, 0.5, 0.0, 1.0, 1.0, 1.0).vol ==
                  Approx(bachelier_to_bs_smile(k, 0.5, 1.0, 1.0).vol).epsilon(1e-14));
        }
    }
    SECTION("fig-1 style skew reproduction within 0.2% of vol") {
        for (double beta : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
            const ModelSpec model = beta == 0.0
                                        ? ModelSpec{BachelierModel{0.5}}
                                        : ModelSpec{DbsParams{0.5, beta, 1.0}};
            for (double k = 0.4; k <= 2.4; k += 0.04) {
                const double approx_vol = dbs_to_bs_smile(k, 0.5, beta, 1.0, 1.0, 1.0).vol;
                const double exact = exact_convert(model, VolTarget::bs(), k, 1.0, 1.0);
                CHECK(approx_vol == Approx(exact).epsilon(2e-3));
            }
        }
    }
    SECTION("skew steepens as beta falls") {
        auto atm_slope = [](double beta) {
            const double h = 0.01;
            return (dbs_to_bs_smile(1.0 + h, 0.5, beta, 1.0, 1.0, 1.0).vol -
                    dbs_to_bs_smile(1.0 - h, 0.5, beta, 1.0, 1.0, 1.0).vol) /
                   (2.0 * h);
        };
        CHECK(atm_slope(0.0) < atm_slope(2.0 / 3.0));
        CHECK(atm_slope(2.0 / 3.0) < atm_slope(1.0));
    }
}

TEST_CASE("conversions stay continuous across the beta branches") {
    const double tiny = 1e-8;
    CHECK(dbs_to_bachelier_smile(1.2, 0.5, tiny, 1.0, 1.0, 1.0) ==
          Approx(dbs_to_bachelier_smile(1.2, 0.5, 0.0, 1.0, 1.0, 1.0)).epsilon(1e-7));
    CHECK(dbs_to_bachelier_atm(0.5, 2e-8, 1.0, 1.0, 1.0) ==
          Approx(dbs_to_bachelier_atm(0.5, 0.0, 1.0, 1.0, 1.0)).epsilon(1e-12));
    CHECK(dbs_to_bs_atm(0.5, 2e-8, 1.0, 1.0, 1.0) ==
          Approx(dbs_to_bs_atm(0.5, 0.0, 1.0, 1.0, 1.0)).epsilon(1e-9));
}

TEST_CASE("exact converter") {
    SECTION("identity conversions") {
        CHECK(exact_convert(BachelierModel{0.5}, VolTarget::bachelier(), 1.3, 1.0, 1.0) ==
              Approx(0.5).epsilon(1e-9));
        CHECK(exact_convert(BlackModel{0.7}, VolTarget::bs(), 0.8, 1.0, 1.0) ==
              Approx(0.7).epsilon(1e-9));
    }
    SECTION("price-level consistency of the approximate conversions") {
        for (double k = 0.5; k <= 2.0; k += 0.1) {
            for (double sigma_bs : {0.2, 0.7}) {
                const double sigma_n = bs_to_bachelier_smile(k, sigma_bs, 1.0, 1.0);
                const OptionKind side = otm_side(k, 1.0);
                const double src = price_black(side, k, 1.0, sigma_bs, 1.0);
                const double tgt = price_bachelier(side, k, 1.0, sigma_n, 1.0);
                const double vega = std::sqrt(1.0) * norm_pdf((1.0 - k) / sigma_n);
                CHECK(std::abs(tgt - src) <= 0.005 * vega * sigma_n);
            }
        }
    }
    SECTION("bachelier to bs fails where no BS vol exists") {
        CHECK_THROWS_AS(exact_convert(BachelierModel{0.5}, VolTarget::bs(), -0.2, 1.0, 1.0),
                        std::invalid_argument);
        // deep low strike: the Bachelier price exceeds the whole BS range
        CHECK_THROWS_AS(exact_convert(BachelierModel{0.5}, VolTarget::bs(), 1e-4, 1.0, 1.0),
                        std::invalid_argument);
    }
    SECTION("documented low-strike breakdown of the approximate inverse") {
        const double k = 0.05;
        const double approx_vol = bachelier_to_bs_smile(k, 0.5, 1.0, 1.0).vol;
        const double exact = exact_convert(BachelierModel{0.5}, VolTarget::bs(), k, 1.0, 1.0);
        CHECK(std::abs(approx_vol - exact) / exact > 0.05);
    }
}
