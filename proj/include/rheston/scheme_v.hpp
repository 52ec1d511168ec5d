#pragma once

#include <vector>

#include "rheston/kernels.hpp"
#include "rheston/model.hpp"
#include "rheston/rng.hpp"

namespace rheston {

// Behaviour switches shared by both schemes. Defaults follow the equations
// verbatim; the alternates exist for ablation studies.
struct SchemeOptions {
    // scheme_v: clip V at 0 inside the integrated-variance sum (the equations
    // keep the raw, possibly negative, values there).
    bool clip_variance_in_x = false;
    // scheme_x: use the closed-form theta drift convolution (default) or the
    // fully discretised sum K(t_k - t_i) * theta * t_i * dt.
    bool exact_theta_drift = true;
};

// One trajectory of the stochastic-Volterra scheme: log-price Y, variance V
// (negative excursions retained), price S = exp(Y) and the left-endpoint
// integrated variance X.
struct VPath {
    std::vector<double> y;
    std::vector<double> v;
    std::vector<double> s;
    std::vector<double> x;
    bool finite = true;  // false if the path produced a non-finite value

    int num_steps() const noexcept { return static_cast<int>(y.size()) - 1; }
};

// Euler recursion
//   V_k = V0 + sum_{i<k} K(t_k - t_i) [ (theta - lambda (V_i)+) dt_{i+1}
//                                       + nu sqrt((V_i)+) dW_{i+1} ]
//   Y_k = Y_{k-1} - (V_{k-1})+/2 dt_k
//         + sqrt((V_{k-1})+) (rho dW_k + sqrt(1-rho^2) dWp_k)
// Only the lambda term and the diffusion see the positive part; theta enters
// unclipped, exactly as the equation reads.
void simulate_v_path(const ModelParams& params, const KernelWeights& weights,
                     const IncrementStream& stream, VPath& out,
                     const SchemeOptions& options = {});
VPath simulate_v_path(const ModelParams& params, const KernelWeights& weights,
                      const IncrementStream& stream, const SchemeOptions& options = {});

// Left-endpoint Riemann sum X_k = sum_{i<k} V_i dt_{i+1} over the raw
// variance values (clipped when options request it).
std::vector<double> integrated_variance(const VPath& path, const TimeGrid& grid,
                                        bool clip_variance = false);

}  // namespace rheston
