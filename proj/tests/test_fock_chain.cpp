#include <doctest.h>

#include <cmath>
#include <vector>

#include "optocool/errors.hpp"
#include "optocool/fock_chain.hpp"
#include "support/oracles.hpp"

using namespace optocool;

namespace {

RateSet demo_rates() {
    return golden_rule_rates(ModelParams{1.0, 0.1, 1e-5, 1e3, 100.0, 0.01, -1.0});
}

RateSet no_light() {
    RateSet r;
    r.gamma_down = r.gamma_up = r.gamma_opt = 0.0;
    return r;
}

} // namespace

TEST_SUITE_BEGIN("fock_chain");

TEST_CASE("thermal chain has the Bose detailed-balance ratio") {
    const double n_th = 2.5;
    const FockChain c = build_chain(no_light(), 1e-3, n_th, 100);
    CHECK(c.balance_ratio() == doctest::Approx(n_th / (n_th + 1.0)).epsilon(1e-14));
}

TEST_CASE("generator conserves probability by construction") {
    const FockChain c = build_chain(demo_rates(), 1e-5, 1e3, 64);
    // every outflow term reappears bit-identically as its neighbor's inflow,
    // so each generator column sums to zero exactly
    for (int n = 0; n <= c.n_max; ++n) {
        const double into_below = n > 0 ? c.down_rate(n) : 0.0;
        const double into_above = n < c.n_max ? c.up_rate(n) : 0.0;
        CHECK(into_below - c.down_rate(n) == (n > 0 ? 0.0 : -c.down_rate(n)));
        CHECK(c.down_rate(0) == 0.0);
        CHECK(c.up_rate(c.n_max) == 0.0);
        const double column_sum =
            (into_below - c.down_rate(n)) + (into_above - c.up_rate(n));
        CHECK(column_sum == 0.0);
    }
}

TEST_CASE("detailed-balance ratio composes the light and thermal rates") {
    const RateSet r = demo_rates();
    const double gamma_m = 1e-5, n_th = 1e3;
    const FockChain c = build_chain(r, gamma_m, n_th, 64);
    CHECK(c.balance_ratio() ==
          doctest::Approx((r.gamma_up + gamma_m * n_th) /
                          (r.gamma_down + gamma_m * (n_th + 1.0)))
              .epsilon(1e-14));
}

TEST_CASE("build_chain rejects bad input") {
    CHECK_THROWS_AS((void)build_chain(demo_rates(), 1e-5, 1e3, 1), ConfigError);
    RateSet bad = demo_rates();
    bad.gamma_up = -1.0;
    CHECK_THROWS_AS((void)build_chain(bad, 1e-5, 1e3, 64), NegativeRate);
    CHECK_THROWS_AS((void)build_chain(demo_rates(), -1e-5, 1e3, 64), NegativeRate);
}

TEST_CASE("thermal steady state is Bose-Einstein") {
    const double n_th = 3.0;
    const FockChain c = build_chain(no_light(), 1e-3, n_th, 200);
    const PopulationState s = steady_state(c);
    CHECK(s.total() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s.mean() == doctest::Approx(n_th).epsilon(1e-9));
    // geometric level ratios
    CHECK(s.probabilities[1] / s.probabilities[0] ==
          doctest::Approx(n_th / (n_th + 1.0)).epsilon(1e-13));
}

TEST_CASE("detailed balance agrees with a dense null-space solve") {
    const FockChain c = build_chain(demo_rates(), 1e-5, 20.0, 150);
    const PopulationState s = steady_state(c, 1.0); // tail check off for this comparison
    const std::vector<double> ns = oracles::nullspace_steady_state(c);
    REQUIRE(ns.size() == s.probabilities.size());
    for (std::size_t n = 0; n < ns.size(); ++n)
        CHECK(s.probabilities[n] == doctest::Approx(ns[n]).epsilon(1e-10));
}

TEST_CASE("strong cooling pushes the mean to the quantum limit") {
    ModelParams p{1.0, 0.1, 1e-5, 1e3, 1e7, 0.01, -1.0};
    const RateSet r = evaluate_rates(p);
    REQUIRE(r.gamma_opt > 1e3 * p.gamma_m * p.n_th / r.n_min);
    const PopulationState s = steady_state_auto(r, p.gamma_m, p.n_th);
    CHECK(s.mean() == doctest::Approx(r.gamma_up / r.gamma_opt).epsilon(1e-3));
}

TEST_CASE("steady state matches the rate-equation mean with automatic cutoff") {
    ModelParams p{1.0, 0.1, 1e-5, 1e3, 0.5, 0.01, -1.0};
    const RateSet r = evaluate_rates(p);
    const PopulationState s = steady_state_auto(r, p.gamma_m, p.n_th);
    CHECK(s.mean() == doctest::Approx(r.n_steady).epsilon(1e-6));
}

TEST_CASE("doubling the cutoff leaves the converged mean unchanged") {
    const RateSet r = demo_rates();
    const double gamma_m = 1e-5, n_th = 30.0;
    const FockChain c1 = build_chain(r, gamma_m, n_th, 400);
    const FockChain c2 = build_chain(r, gamma_m, n_th, 800);
    const double m1 = steady_state(c1).mean();
    const double m2 = steady_state(c2).mean();
    CHECK(std::abs(m2 - m1) / m1 < 1e-8);
}

TEST_CASE("cutoff errors") {
    // heating chain has no normalizable stationary state
    RateSet heating;
    heating.gamma_down = 0.1;
    heating.gamma_up = 0.2;
    heating.gamma_opt = -0.1;
    CHECK_THROWS_AS((void)steady_state(build_chain(heating, 1e-3, 1.0, 64)), Unstable);
    // undersized cutoff trips the tail criterion
    const FockChain tiny = build_chain(no_light(), 1e-3, 50.0, 10);
    CHECK_THROWS_AS((void)steady_state(tiny), CutoffTooSmall);
    // the auto wrapper grows past it
    const PopulationState s = steady_state_auto(no_light(), 1e-3, 50.0);
    CHECK(s.mean() == doctest::Approx(50.0).epsilon(1e-7));
}

TEST_CASE("closed-form mean relaxation") {
    const RateSet r = demo_rates();
    const double gamma_m = 1e-5, n_th = 1e3;
    const double total = gamma_m + r.gamma_opt;
    const double n_inf = (gamma_m * n_th + r.gamma_up) / total;
    const double n0 = 40.0;
    CHECK(evolve_mean(n0, r, gamma_m, n_th, 0.0) == n0);
    CHECK(evolve_mean(n0, r, gamma_m, n_th, 1e9) == doctest::Approx(n_inf).epsilon(1e-12));
    CHECK(evolve_mean(n0, r, gamma_m, n_th, std::log(2.0) / total) ==
          doctest::Approx(0.5 * (n0 + n_inf)).epsilon(1e-12));

    RateSet blue;
    blue.gamma_opt = -1.0;
    CHECK_THROWS_AS((void)evolve_mean(n0, blue, 1e-5, 1.0, 1.0), Unstable);
}

TEST_CASE("full-chain evolution reproduces the closed form and conserves probability") {
    ModelParams p{1.0, 0.2, 1e-4, 5.0, 20.0, 0.02, -1.0};
    const RateSet r = evaluate_rates(p);
    const double n0 = 12.0;
    const int n_max = 400;
    const FockChain chain = build_chain(r, p.gamma_m, p.n_th, n_max);

    std::vector<double> times;
    const double horizon = 2.0 / (p.gamma_m + r.gamma_opt);
    for (int k = 0; k <= 10; ++k) times.push_back(horizon * k / 10.0);

    const ChainEvolution ev = evolve_chain(chain, geometric_state(n0, n_max), times);
    CHECK(ev.max_total_drift < 1e-9);
    for (std::size_t k = 0; k < times.size(); ++k)
        CHECK(ev.means[k] ==
              doctest::Approx(evolve_mean(n0, r, p.gamma_m, p.n_th, times[k])).epsilon(1e-6));
}

TEST_SUITE_END();
