#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "rheston/payoffs.hpp"

using namespace rheston;

TEST_CASE("payoff definitions on simple paths") {
    const TimeGrid grid = TimeGrid::uniform(4, 1.0);
    const std::vector<double> s{1.0, 1.1, 0.9, 1.05, 1.0};
    const std::vector<double> x{0.0, 0.01, 0.02, 0.03, 0.04};

    SUBCASE("at-the-money boundary") {
        CHECK(evaluate(Payoff::european_call(1.0), s, x, grid) == 0.0);
    }
    SUBCASE("zero-strike lookback returns the maximum") {
        CHECK(evaluate(Payoff::lookback_call(0.0), s, x, grid) == doctest::Approx(1.1));
    }
    SUBCASE("asian on a constant path") {
        const std::vector<double> flat(5, 2.0);
        CHECK(evaluate(Payoff::asian_call(2.0), flat, x, grid) == 0.0);
        // the right-endpoint average of a constant path is that constant
        CHECK(evaluate(Payoff::asian_call(0.0), flat, x, grid) == doctest::Approx(2.0));
    }
    SUBCASE("variance instruments read the terminal X") {
        CHECK(evaluate(Payoff::variance_swap(), s, x, grid) == 0.04);
        CHECK(evaluate(Payoff::variance_call(0.02), s, x, grid) == doctest::Approx(0.02));
        CHECK(evaluate(Payoff::variance_call(0.05), s, x, grid) == 0.0);
    }
    SUBCASE("asian uses right endpoints only") {
        // A = (T/n) * (s1 + ... + sn); s0 excluded
        const double a = 0.25 * (1.1 + 0.9 + 1.05 + 1.0);
        CHECK(evaluate(Payoff::asian_call(0.0), s, x, grid) == doctest::Approx(a));
    }
}

TEST_CASE("payoff properties on random paths") {
    std::mt19937_64 gen(17);
    std::lognormal_distribution<double> price(0.0, 0.2);
    const TimeGrid grid = TimeGrid::uniform(16, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> s(17);
        std::vector<double> x(17);
        for (std::size_t k = 0; k < 17; ++k) {
            s[k] = price(gen);
            x[k] = 0.002 * static_cast<double>(k);
        }
        const double strike = price(gen);

        // lookback dominates european at equal strike, everything nonnegative
        const double euro = evaluate(Payoff::european_call(strike), s, x, grid);
        const double look = evaluate(Payoff::lookback_call(strike), s, x, grid);
        CHECK(euro >= 0.0);
        CHECK(look >= euro);
        CHECK(evaluate(Payoff::asian_call(strike), s, x, grid) >= 0.0);
        CHECK(evaluate(Payoff::variance_call(0.01), s, x, grid) >= 0.0);

        // the asian average is symmetric in the interior nodes
        std::vector<double> shuffled = s;
        std::shuffle(shuffled.begin() + 1, shuffled.end() - 1, gen);
        shuffled.back() = s.back();
        std::vector<double> both_orders{evaluate(Payoff::asian_call(strike), s, x, grid),
                                        evaluate(Payoff::asian_call(strike), shuffled, x, grid)};
        CHECK(both_orders[0] == doctest::Approx(both_orders[1]).epsilon(1e-12));
    }
}

TEST_CASE("negative strikes are rejected") {
    CHECK_THROWS_AS(Payoff::european_call(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Payoff::variance_call(-0.02), std::invalid_argument);
}
