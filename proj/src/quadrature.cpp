#include "rheston/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rheston {

namespace {

constexpr int kOrder = 15;

struct GaussRule {
    std::array<double, kOrder> x{};  // nodes on [-1, 1]
    std::array<double, kOrder> w{};
};

// Legendre nodes/weights by Newton iteration on P_n (three-term recurrence).
GaussRule make_rule() {
    GaussRule rule;
    const int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[static_cast<std::size_t>(i)] = -x;
        rule.w[static_cast<std::size_t>(i)] = w;
        rule.x[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.w[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

const GaussRule& rule() {
    static const GaussRule r = make_rule();
    return r;
}

double gauss_cell(const std::function<double(double)>& f, double a, double b, long& evals) {
    const auto& r = rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < kOrder; ++i)
        acc += r.w[static_cast<std::size_t>(i)] * f(mid + half * r.x[static_cast<std::size_t>(i)]);
    evals += kOrder;
    return acc * half;
}

void adapt(const std::function<double(double)>& f, double a, double b, double whole,
           double tol, int depth, int max_depth, QuadratureResult& out) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_cell(f, a, mid, out.evaluations);
    const double right = gauss_cell(f, mid, b, out.evaluations);
    const double err = std::abs(whole - left - right);
    if (err <= tol || depth >= max_depth) {
        out.value += left + right;
        out.error_estimate += err;
        if (depth >= max_depth && err > tol) out.converged = false;
        return;
    }
    adapt(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, out);
    adapt(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_depth) {
    QuadratureResult out;
    out.converged = true;
    if (a == b) return out;
    const double whole = gauss_cell(f, a, b, out.evaluations);
    adapt(f, a, b, whole, abs_tol, 0, max_depth, out);
    return out;
}

double gauss_fixed(const std::function<double(double)>& f, double a, double b) {
    long evals = 0;
    return gauss_cell(f, a, b, evals);
}

QuadratureResult integrate_singular_left(const std::function<double(double)>& f, double a,
                                         double b, double p, double abs_tol) {
    if (!(p > 0.0)) throw std::invalid_argument("integrate_singular_left: p must be positive");
    if (p >= 1.0)  // no singularity to remove
        return integrate_adaptive(f, a, b, abs_tol);
    const double inv_p = 1.0 / p;
    const double ub = std::pow(b - a, p);
    auto g = [&](double u) {
        const double t = a + std::pow(u, inv_p);
        return f(t) * inv_p * std::pow(u, inv_p - 1.0);
    };
    return integrate_adaptive(g, 0.0, ub, abs_tol);
}

}  // namespace rheston
