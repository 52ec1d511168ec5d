#pragma once

#include <functional>

namespace rheston {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// Adaptive bisection quadrature with a fixed-order Gauss-Legendre rule per
// cell (nodes computed once at startup by Newton iteration on P_n). The error
// indicator on a cell is |I(cell) - I(left half) - I(right half)|.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-10, int max_depth = 48);

// Integral of f over (a, b] where f may carry an integrable algebraic
// singularity at the left endpoint a, f(t) ~ (t - a)^(p - 1) with p > 0.
// The substitution t = a + u^(1/p) removes the singularity before the
// adaptive rule runs.
QuadratureResult integrate_singular_left(const std::function<double(double)>& f, double a,
                                         double b, double p, double abs_tol = 1e-10);

// Single fixed-order Gauss-Legendre evaluation on [a, b] (15 nodes). Used
// where the caller composites cells itself, e.g. the Fourier sweep panels
// whose integrand evaluations are expensive solver calls.
double gauss_fixed(const std::function<double(double)>& f, double a, double b);

}  // namespace rheston
