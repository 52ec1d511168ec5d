#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "rheston/grid.hpp"
#include "rheston/rng.hpp"

using namespace rheston;

TEST_CASE("uniform grid nodes are exact") {
    const TimeGrid g1 = TimeGrid::uniform(1, 1.0);
    CHECK(g1.node(0) == 0.0);
    CHECK(g1.node(1) == 1.0);

    const TimeGrid g4 = TimeGrid::uniform(4, 1.0);
    CHECK(g4.node(1) == 0.25);
    CHECK(g4.node(2) == 0.5);
    CHECK(g4.node(3) == 0.75);
    CHECK(g4.node(4) == 1.0);

    // non-accumulated construction: t_2 = 2*(1/3) computed as 2/3 directly
    const TimeGrid g3 = TimeGrid::uniform(3, 1.0);
    CHECK(g3.node(2) == 2.0 / 3.0);
    CHECK(g3.node(3) == 1.0);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(TimeGrid::uniform(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::uniform(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid({0.1, 0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("left-endpoint map") {
    const TimeGrid g = TimeGrid::uniform(4, 1.0);
    CHECK(g.eta(0.0) == 0.0);
    CHECK(g.eta(0.25) == 0.25);
    CHECK(g.eta(0.3) == 0.25);
    CHECK(g.eta(0.999) == 0.75);
    CHECK(g.eta(1.0) == 1.0);

    // eta(s) <= s < eta(s) + step
    const TimeGrid irregular({0.0, 0.1, 0.35, 0.7, 1.0});
    for (double s : {0.05, 0.1, 0.2, 0.34999, 0.36, 0.699, 0.9}) {
        const double e = irregular.eta(s);
        const int k = irregular.cell_index(s);
        CHECK(e <= s);
        CHECK(s < e + irregular.step(k + 1));
    }
}

TEST_CASE("increment streams are deterministic and path-keyed") {
    const TimeGrid g = TimeGrid::uniform(16, 1.0);
    const IncrementStream a(42, 7, g);
    const IncrementStream b(42, 7, g);
    for (int k = 1; k <= 16; ++k) {
        CHECK(a.z(k) == b.z(k));
        CHECK(a.z_perp(k) == b.z_perp(k));
        CHECK(a.dw(k) == b.dw(k));
    }
    const IncrementStream c(42, 8, g);
    const IncrementStream d(43, 7, g);
    CHECK(a.z(1) != c.z(1));
    CHECK(a.z(1) != d.z(1));
}

TEST_CASE("increment moments at scale") {
    const int num_paths = 100000;
    const TimeGrid g = TimeGrid::uniform(2, 1.0);
    double sum = 0.0, sum_sq = 0.0, cross = 0.0;
    const double sqrt_dt = std::sqrt(g.step(1));
    for (int j = 0; j < num_paths; ++j) {
        const IncrementStream s(123, j, g);
        const double w = s.dw(1) / sqrt_dt;
        const double wp = s.dw_perp(1) / sqrt_dt;
        sum += w;
        sum_sq += w * w;
        cross += w * wp;
    }
    const double mean = sum / num_paths;
    const double var = sum_sq / num_paths - mean * mean;
    const double corr = cross / num_paths;
    const double band = 4.0 / std::sqrt(static_cast<double>(num_paths));
    CHECK(std::abs(mean) < band);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(corr) < band);
}

TEST_CASE("Kolmogorov-Smirnov sanity of Z_1") {
    const int n = 10000;
    const TimeGrid g = TimeGrid::uniform(1, 1.0);
    std::vector<double> sample(n);
    for (int j = 0; j < n; ++j) sample[static_cast<std::size_t>(j)] = IncrementStream(7, j, g).z(1);
    std::sort(sample.begin(), sample.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        const double cdf = 0.5 * std::erfc(-sample[static_cast<std::size_t>(i)] / std::sqrt(2.0));
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(std::abs(cdf - lo), std::abs(hi - cdf)));
    }
    // 1% critical value for large n
    CHECK(d < 1.62762 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("bias hook shifts the normals") {
    const TimeGrid g = TimeGrid::uniform(4, 1.0);
    const IncrementStream s(5, 0, g);
    const IncrementStream biased = s.with_bias(0.5, -0.25);
    for (int k = 1; k <= 4; ++k) {
        CHECK(biased.z(k) == doctest::Approx(s.z(k) + 0.5));
        CHECK(biased.z_perp(k) == doctest::Approx(s.z_perp(k) - 0.25));
    }
}
