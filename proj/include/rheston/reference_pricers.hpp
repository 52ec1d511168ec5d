#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rheston/kernels.hpp"
#include "rheston/model.hpp"

namespace rheston {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// E[X_t] on a fine uniform grid, from the linear Volterra equation
//   u(t) = V0 t + int_0^t K(t-s) (theta s - lambda u(s)) ds
// solved by product integration: the kernel is integrated exactly (closed
// form for power laws, singularity-aware quadrature otherwise) against a
// piecewise-linear interpolant of u, with an implicit scalar solve per step.
struct VolterraOdeSolution {
    TimeGrid grid;
    std::vector<double> values;
};
VolterraOdeSolution solve_expected_integrated_variance(const ModelParams& params,
                                                       const Kernel& kernel, double t,
                                                       int resolution);

// Value at t with a grid-doubling convergence check (absolute 1e-6); raises
// SolverError when refinement fails to settle.
double expected_integrated_variance(const ModelParams& params, const Kernel& kernel, double t,
                                    int resolution = 2000);

// Riccati-Volterra solution psi = K * F(z, psi) on a uniform grid of m steps
// (fractional Adams predictor-corrector; requires a power-law kernel), plus
// the log-transform it induces:
//   log E[exp(z log S_T)] = z log S0 + int_0^T F(z, psi(s)) g0(T-s) ds
//   log E[exp(z X_T)]     =           int_0^T F(z, psi(s)) g0(T-s) ds
// with g0(t) = V0 + theta int_0^t K. The two transforms differ only in F:
//   log-price: F(z,p) = (z^2 - z)/2 + (rho nu z - lambda) p + nu^2 p^2 / 2
//   variance:  F(z,p) = z - lambda p + nu^2 p^2 / 2
struct RiccatiSolution {
    std::vector<std::complex<double>> psi;
    std::vector<std::complex<double>> f_values;
    double step = 0.0;
};

std::complex<double> log_transform_logS(const ModelParams& params, const Kernel& kernel,
                                        std::complex<double> z, int resolution = 1600);
std::complex<double> log_transform_X(const ModelParams& params, const Kernel& kernel,
                                     std::complex<double> z, int resolution = 1600);

// E[exp(i u log S_T)] and E[exp(i u X_T)] for real frequencies.
std::complex<double> char_fn_logS(const ModelParams& params, const Kernel& kernel, double u,
                                  int resolution = 1600);
std::complex<double> char_fn_X(const ModelParams& params, const Kernel& kernel, double u,
                               int resolution = 1600);

// phi(w) = E[exp(i w log S_T)] for complex w (the Fourier argument).
using CharFn = std::function<std::complex<double>(std::complex<double>)>;
// mgf(z) = E[exp(z X_T)] for complex z with Re z <= some damping bound.
using MgfFn = std::function<std::complex<double>(std::complex<double>)>;

// Damped-transform call price from a log-price characteristic function
// (Carr-Madan): requires E[S_T^(damping+1)] finite. The inversion integral is
// truncated by a tail threshold and verified by doubling truncation and node
// count; non-convergence raises SolverError.
double fourier_call_price(const CharFn& phi, double strike, double damping = 1.5,
                          double tolerance = 1e-5);

// Call on an arithmetic (nonnegative) underlying via put-call parity and a
// negatively-damped put transform: E[(X-K)+] = mean - K + E[(K-X)+] with
//   E[(K-X)+] = (1/pi) int_0^inf Re[ e^{-zK} mgf(z) / z^2 ] du,  z = -damping + iu.
// Always integrable (|mgf| <= 1 on Re z < 0).
double fourier_arithmetic_call_price(const MgfFn& mgf, double mean_value, double strike,
                                     double damping = 50.0, double tolerance = 1e-5);

// The paper's three reference numbers at the experiment parameters.
double reference_european_call(const ModelParams& params, const Kernel& kernel,
                               double strike = 1.0, double damping = 1.5,
                               int resolution = 1600, double tolerance = 1e-5);
double reference_variance_call(const ModelParams& params, const Kernel& kernel,
                               double damping = 50.0, int resolution = 800,
                               double tolerance = 1e-5);

}  // namespace rheston
