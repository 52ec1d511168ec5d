#include <doctest.h>

#include <cmath>

#include "rheston/quadrature.hpp"

using namespace rheston;

TEST_CASE("adaptive rule on smooth integrands") {
    auto r = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, 3.14159265358979,
                                1e-12);
    CHECK(r.value == doctest::Approx(1.0 - std::cos(3.14159265358979)).epsilon(1e-12));

    auto g = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12);
    CHECK(g.value == doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-12));
}

TEST_CASE("singular left endpoint") {
    // int_0^1 t^(-0.4) dt = 1/0.6
    auto r = integrate_singular_left([](double t) { return std::pow(t, -0.4); }, 0.0, 1.0, 0.6,
                                     1e-12);
    CHECK(r.value == doctest::Approx(1.0 / 0.6).epsilon(1e-11));

    // int_0^2 t^(-0.8) (2 - t) dt = 2 * 2^0.2/0.2 - 2^1.2/1.2
    auto s = integrate_singular_left([](double t) { return std::pow(t, -0.8) * (2.0 - t); }, 0.0,
                                     2.0, 0.2, 1e-12);
    const double exact = 2.0 * std::pow(2.0, 0.2) / 0.2 - std::pow(2.0, 1.2) / 1.2;
    CHECK(s.value == doctest::Approx(exact).epsilon(1e-10));
}
