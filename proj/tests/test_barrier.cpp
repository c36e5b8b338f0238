#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bachelier/barrier.hpp"
#include "bachelier/mc.hpp"
#include "test_helpers.hpp"

using namespace bachelier;
using Catch::Approx;

namespace {
constexpr OptionKind kCall = OptionKind::Call;
constexpr OptionKind kPut = OptionKind::Put;
const double kFig4Vol = 0.2 * std::sqrt(2.0 * M_PI);  // ATM vanilla price 0.2

BarrierSpec down_out(double level) { return {BarrierDirection::Down, BarrierKnock::Out, level}; }
BarrierSpec up_out(double level) { return {BarrierDirection::Up, BarrierKnock::Out, level}; }
}

TEST_CASE("reflection density") {
    SECTION("integrates to the running-maximum law") {
        const double sigma = 0.5, t = 1.0, st = sigma;
        for (double y : {0.3, 0.8, 1.5}) {
            const long double mass = oracle::simpson(
                [&](long double x) { return (long double)reflection_density((double)x, y, sigma, t); },
                (long double)(-12.0 * st), (long double)y, 8000);
            CHECK((double)mass == Approx(2.0 * norm_cdf(y / st) - 1.0).margin(1e-10));
        }
    }
    SECTION("distant bound recovers the plain normal density") {
        const double y = 60.0;
        for (double x : {-0.5, 0.0, 0.7})
            CHECK(reflection_density(x, y, 0.5, 1.0) ==
                  Approx(norm_pdf(x / 0.5) / 0.5).epsilon(1e-12));
    }
    SECTION("vanishes on the boundary") {
        CHECK(reflection_density(0.8, 0.8, 0.5, 1.0) == Approx(0.0).margin(1e-16));
    }
}

TEST_CASE("bachelier knock-out closed forms match the quadrature integrals") {
    const double f = 1.0, k = 1.0, t = 1.0;
    const struct {
        OptionKind kind;
        BarrierSpec spec;
    } cases[] = {
        {kCall, down_out(0.7)},
        {kCall, up_out(1.5)},
        {kPut, down_out(0.7)},
        {kPut, up_out(1.5)},
        {kCall, down_out(0.35)},
        {kPut, up_out(1.8)},
    };
    for (const auto& c : cases) {
        const double closed = barrier_price_bachelier(c.kind, c.spec, k, f, kFig4Vol, t).price;
        const double integral = barrier_integral_check(c.kind, c.spec, k, f, kFig4Vol, t);
        CHECK(closed == Approx(integral).margin(1e-8));
    }
    SECTION("up-out call at the strike has no payout region") {
        CHECK(barrier_integral_check(kCall, up_out(1.0), 1.0, 0.9, kFig4Vol, 1.0) ==
              Approx(0.0).margin(1e-15));
    }
    SECTION("distant barrier recovers the vanilla through the integral") {
        const double lo = 1.0 - 50.0 * kFig4Vol;
        CHECK(barrier_integral_check(kCall, down_out(lo), 1.0, 1.0, kFig4Vol, 1.0) ==
              Approx(price_bachelier(kCall, 1.0, 1.0, kFig4Vol, 1.0)).margin(1e-8));
    }
}

TEST_CASE("in-and-out parity across models and types") {
    const double t = 1.0;
    const DbsParams dbs{0.5, 0.4, 1.0};
    for (double k : {0.8, 1.0, 1.2}) {
        for (double level : {0.6, 0.85}) {
            for (OptionKind kind : {kCall, kPut}) {
                for (auto dir : {BarrierDirection::Down, BarrierDirection::Up}) {
                    const double lv = dir == BarrierDirection::Down ? level : 2.0 - level;
                    const BarrierSpec out{dir, BarrierKnock::Out, lv};
                    const BarrierSpec in{dir, BarrierKnock::In, lv};
                    const double ko_b = barrier_price_bachelier(kind, out, k, 1.0, 0.5, t).price;
                    const double ki_b = barrier_price_bachelier(kind, in, k, 1.0, 0.5, t).price;
                    CHECK(ko_b + ki_b ==
                          Approx(price_bachelier(kind, k, 1.0, 0.5, t)).margin(1e-12));
                    const double ko_s = barrier_price_black(kind, out, k, 1.0, 0.5, t).price;
                    const double ki_s = barrier_price_black(kind, in, k, 1.0, 0.5, t).price;
                    CHECK(ko_s + ki_s == Approx(price_black(kind, k, 1.0, 0.5, t)).margin(1e-12));
                    const double ko_d = barrier_price_dbs(kind, out, k, 1.0, dbs, t).price;
                    const double ki_d = barrier_price_dbs(kind, in, k, 1.0, dbs, t).price;
                    CHECK(ko_d + ki_d == Approx(price_dbs(kind, k, 1.0, dbs, t)).margin(1e-12));
                }
            }
        }
    }
}

TEST_CASE("degenerate barriers") {
    SECTION("vanishing barrier recovers the vanilla") {
        const double lo = 1.0 - 50.0 * 0.5;
        CHECK(barrier_price_bachelier(kCall, down_out(lo), 1.0, 1.0, 0.5, 1.0).price ==
              Approx(price_bachelier(kCall, 1.0, 1.0, 0.5, 1.0)).margin(1e-12));
    }
    SECTION("already knocked out prices to zero with a status") {
        const auto r = barrier_price_bachelier(kCall, down_out(1.1), 1.0, 1.0, 0.5, 1.0);
        CHECK(r.price == 0.0);
        CHECK(r.status == BarrierStatus::AlreadyKnockedOut);
        // the matching knock-in is the vanilla
        const auto in = barrier_price_bachelier(
            kCall, {BarrierDirection::Down, BarrierKnock::In, 1.1}, 1.0, 1.0, 0.5, 1.0);
        CHECK(in.price == Approx(price_bachelier(kCall, 1.0, 1.0, 0.5, 1.0)).epsilon(1e-15));
    }
    SECTION("up-and-out call struck above the barrier is worthless") {
        const auto r = barrier_price_bachelier(kCall, up_out(1.2), 1.2, 1.0, 0.5, 1.0);
        CHECK(r.price == 0.0);
        CHECK(r.status == BarrierStatus::Worthless);
        const auto r2 = barrier_price_black(kPut, down_out(0.8), 0.7, 1.0, 0.5, 1.0);
        CHECK(r2.price == 0.0);
        CHECK(r2.status == BarrierStatus::Worthless);
    }
}

TEST_CASE("knock-out price properties") {
    SECTION("never exceeds the vanilla") {
        for (double level : {0.5, 0.8, 0.95}) {
            CHECK(barrier_price_bachelier(kPut, down_out(level), 1.0, 1.0, 0.5, 1.0).price <=
                  price_bachelier(kPut, 1.0, 1.0, 0.5, 1.0) + 1e-15);
            CHECK(barrier_price_black(kPut, down_out(level), 1.0, 1.0, 0.5, 1.0).price <=
                  price_black(kPut, 1.0, 1.0, 0.5, 1.0) + 1e-15);
        }
    }
    SECTION("monotone in the barrier distance") {
        double prev = -1.0;
        for (double level : {0.9, 0.8, 0.7, 0.6}) {
            const double p = barrier_price_bachelier(kPut, down_out(level), 1.0, 1.0, 0.5, 1.0).price;
            CHECK(p >= prev);
            prev = p;
        }
        prev = -1.0;
        for (double level : {1.1, 1.3, 1.6, 2.0}) {
            const double p = barrier_price_bachelier(kCall, up_out(level), 1.0, 1.0, 0.5, 1.0).price;
            CHECK(p >= prev);
            prev = p;
        }
    }
    SECTION("mirror symmetry of the Bachelier reflection") {
        const double up = barrier_price_bachelier(kCall, up_out(1.5), 1.2, 1.0, 0.5, 1.0).price;
        const double dn = barrier_price_bachelier(kPut, down_out(-1.5), -1.2, -1.0, 0.5, 1.0).price;
        CHECK(up == Approx(dn).margin(1e-12));
    }
}

TEST_CASE("dbs barrier prices converge to the Bachelier ones") {
    const DbsParams nearly_normal{kFig4Vol, 1e-4, 1.0};
    for (double level : {0.3, 0.6, 0.9}) {
        const double b = barrier_price_bachelier(kPut, down_out(level), 1.0, 1.0, kFig4Vol, 1.0).price;
        const double d = barrier_price_dbs(kPut, down_out(level), 1.0, 1.0, nearly_normal, 1.0).price;
        CHECK(std::abs(d - b) <= 1e-5);
    }
    for (double level : {1.2, 1.5, 1.8}) {
        const double b = barrier_price_bachelier(kCall, up_out(level), 1.0, 1.0, kFig4Vol, 1.0).price;
        const double d = barrier_price_dbs(kCall, up_out(level), 1.0, 1.0, nearly_normal, 1.0).price;
        CHECK(std::abs(d - b) <= 1e-5);
    }
}

TEST_CASE("skew effect on knock-out prices across beta") {
    // all models repriced to the ATM vanilla price 0.2
    auto vol_for = [](double beta) {
        if (beta == 0.0) return kFig4Vol;
        return 2.0 / beta * norm_quantile(0.5 * (0.2 * beta + 1.0));
    };
    const double betas[] = {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    auto price_at = [&](double beta, OptionKind kind, const BarrierSpec& spec) {
        const double vol = vol_for(beta);
        if (beta == 0.0) return barrier_price_bachelier(kind, spec, 1.0, 1.0, vol, 1.0).price;
        if (beta == 1.0) return barrier_price_black(kind, spec, 1.0, 1.0, vol, 1.0).price;
        return barrier_price_dbs(kind, spec, 1.0, 1.0, {vol, beta, 1.0}, 1.0).price;
    };
    SECTION("down-and-out puts increase with beta") {
        for (double level : {0.2, 0.5, 0.8}) {
            double prev = -1.0;
            for (double beta : betas) {
                const double p = price_at(beta, kPut, down_out(level));
                CHECK(p > prev);
                prev = p;
            }
        }
    }
    SECTION("up-and-out calls decrease with beta") {
        for (double level : {1.2, 1.5, 1.8}) {
            double prev = 1e9;
            for (double beta : betas) {
                const double p = price_at(beta, kCall, up_out(level));
                CHECK(p < prev);
                prev = p;
            }
        }
    }
}

TEST_CASE("bridge Monte-Carlo agrees with the closed forms") {
    const mc::McConfig cfg{50000, 250, 42, false};
    const double closed_put =
        barrier_price_bachelier(kPut, down_out(0.7), 1.0, 1.0, kFig4Vol, 1.0).price;
    const auto est_put =
        mc::barrier(BachelierModel{kFig4Vol}, kPut, down_out(0.7), 1.0, 1.0, 1.0, cfg);
    CHECK(std::abs(est_put.zscore(closed_put)) <= 3.0);

    const double closed_call =
        barrier_price_black(kCall, up_out(1.5), 1.0, 1.0, 0.5, 1.0).price;
    const auto est_call = mc::barrier(BlackModel{0.5}, kCall, up_out(1.5), 1.0, 1.0, 1.0, cfg);
    CHECK(std::abs(est_call.zscore(closed_call)) <= 3.0);

    SECTION("knock-in estimates satisfy parity too") {
        const auto est_in = mc::barrier(BachelierModel{kFig4Vol}, kPut,
                                        {BarrierDirection::Down, BarrierKnock::In, 0.7}, 1.0, 1.0,
                                        1.0, cfg);
        const double closed_in = price_bachelier(kPut, 1.0, 1.0, kFig4Vol, 1.0) - closed_put;
        CHECK(std::abs(est_in.zscore(closed_in)) <= 3.0);
    }
}
