#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rheston/monte_carlo.hpp"
#include "rheston/rng.hpp"

using namespace rheston;

namespace {

ModelParams paper_params() {
    return ModelParams{1.0, 0.02, 0.02, 0.3, 0.3, -0.7, 1.0};
}

McConfig small_config(SchemeKind scheme, int n, std::int64_t m, std::uint64_t seed = 0) {
    McConfig cfg;
    cfg.scheme = scheme;
    cfg.num_steps = n;
    cfg.num_paths = m;
    cfg.master_seed = seed;
    cfg.workers = 1;
    return cfg;
}

bool same_estimate(const McEstimate& a, const McEstimate& b) {
    return a.mean == b.mean && a.stat_error == b.stat_error && a.ci_low == b.ci_low &&
           a.ci_high == b.ci_high && a.num_paths == b.num_paths &&
           a.fault_count == b.fault_count;
}

}  // namespace

TEST_CASE("constant payoff estimates have zero statistical error") {
    ModelParams p = paper_params();
    p.v0 = 0.0;
    p.theta = 0.0;
    const auto est = price(p, Kernel::gamma_power_law(0.1), Payoff::variance_swap(),
                           small_config(SchemeKind::Integrated, 8, 500));
    CHECK(est.mean == 0.0);
    CHECK(est.stat_error == 0.0);
    CHECK(est.ci_low == 0.0);
    CHECK(est.ci_high == 0.0);
}

TEST_CASE("noise-free variance swap is deterministic") {
    ModelParams p = paper_params();
    p.nu = 0.0;
    const auto est = price(p, Kernel::gamma_power_law(0.1), Payoff::variance_swap(),
                           small_config(SchemeKind::Volterra, 16, 300));
    CHECK(est.stat_error <= 1e-12);
    CHECK(est.mean > 0.0);
}

TEST_CASE("estimator machinery is unbiased on synthetic samples") {
    // samples max(Z, 0) with Z standard normal: mean = 1/sqrt(2 pi)
    const double target = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    const int reps = 50;
    const int m = 10000;
    Xoshiro256pp gen(1234);
    std::vector<double> rep_means;
    double rep_se = 0.0;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> samples(m);
        for (int i = 0; i < m; i += 2) {
            const double u1 = gen.next_open_unit();
            const double u2 = gen.next_unit();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            samples[static_cast<std::size_t>(i)] =
                std::max(radius * std::cos(2.0 * std::numbers::pi * u2), 0.0);
            samples[static_cast<std::size_t>(i) + 1] =
                std::max(radius * std::sin(2.0 * std::numbers::pi * u2), 0.0);
        }
        const McEstimate est = estimate_from_samples(samples);
        rep_means.push_back(est.mean);
        rep_se = est.stat_error;
        CHECK(est.ci_low <= est.mean);
        CHECK(est.mean <= est.ci_high);
    }
    double grand = 0.0;
    for (double v : rep_means) grand += v;
    grand /= reps;
    CHECK(std::abs(grand - target) <= 5.0 * rep_se / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("statistical error follows the 1/sqrt(M) law") {
    const ModelParams p = paper_params();
    const Kernel k = Kernel::gamma_power_law(0.1);
    const auto small = price(p, k, Payoff::european_call(1.0),
                             small_config(SchemeKind::Integrated, 20, 10000, 4));
    const auto large = price(p, k, Payoff::european_call(1.0),
                             small_config(SchemeKind::Integrated, 20, 40000, 4));
    const double ratio = small.stat_error / large.stat_error;
    CHECK(ratio >= 1.8);
    CHECK(ratio <= 2.2);
}

TEST_CASE("worker count never changes the estimate") {
    const ModelParams p = paper_params();
    const Kernel k = Kernel::gamma_power_law(0.1);
    for (SchemeKind scheme : {SchemeKind::Volterra, SchemeKind::Integrated}) {
        McConfig cfg = small_config(scheme, 24, 3000, 99);
        cfg.workers = 1;
        const auto one = price(p, k, Payoff::asian_call(1.0), cfg);
        cfg.workers = 2;
        const auto two = price(p, k, Payoff::asian_call(1.0), cfg);
        cfg.workers = 8;
        const auto eight = price(p, k, Payoff::asian_call(1.0), cfg);
        CHECK(same_estimate(one, two));
        CHECK(same_estimate(one, eight));
    }
}

TEST_CASE("path faults abort the run") {
    ModelParams p = paper_params();
    p.nu = 1e308;  // diffusion overflows within a few steps on most paths
    CHECK_THROWS_AS(price(p, Kernel::gamma_power_law(0.1), Payoff::european_call(1.0),
                          small_config(SchemeKind::Volterra, 4, 50)),
                    PathFaultError);
    try {
        price(p, Kernel::gamma_power_law(0.1), Payoff::european_call(1.0),
              small_config(SchemeKind::Volterra, 4, 50));
    } catch (const PathFaultError& e) {
        CHECK(e.fault_count() >= 1);
        CHECK(e.fault_count() <= 50);
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
    }
}

TEST_CASE("convergence table") {
    const ModelParams p = paper_params();
    const Kernel k = Kernel::gamma_power_law(0.1);
    SUBCASE("smallest legal run") {
        const auto rows = convergence_table(p, k, Payoff::variance_swap(), {10}, 2, 0, 1);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].scheme == "volterra");
        CHECK(rows[1].scheme == "integrated");
        CHECK(rows[0].num_steps == 10);
    }
    SUBCASE("row layout follows (scheme, n)") {
        const auto rows = convergence_table(p, k, Payoff::variance_swap(), {4, 10}, 64, 0, 1);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].num_steps == 4);
        CHECK(rows[1].num_steps == 10);
        CHECK(rows[2].scheme == "integrated");
        for (const auto& row : rows) {
            CHECK(row.ci_low <= row.mean);
            CHECK(row.mean <= row.ci_high);
        }
    }
    SUBCASE("empty n list is rejected") {
        CHECK_THROWS_AS(convergence_table(p, k, Payoff::variance_swap(), {}, 100, 0, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("config validation") {
    McConfig cfg;
    cfg.num_paths = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.num_paths = 2;
    cfg.num_steps = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("pairwise summation matches a compensated reference") {
    std::vector<double> values;
    Xoshiro256pp gen(9);
    for (int i = 0; i < 100001; ++i) values.push_back(gen.next_unit() - 0.5);
    // Kahan reference
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    CHECK(pairwise_sum(values) == doctest::Approx(sum).epsilon(1e-12));
}
