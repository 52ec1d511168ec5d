#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rheston/kernels.hpp"
#include "rheston/model.hpp"
#include "rheston/monte_carlo.hpp"

namespace rheston {

// Regression of log E|increment|^p against log(lag) at dyadic lags anchored
// at T/2. The theorem-level target for the slope is p*H.
struct HolderReport {
    std::vector<std::pair<double, double>> lags;  // (s, t) pairs
    std::vector<double> empirical_moments;        // E|Delta|^p per lag
    double fitted_slope = 0.0;
    double target = 0.0;  // p * H
};

HolderReport holder_scaling_report(SchemeKind scheme, const ModelParams& params,
                                   const Kernel& kernel, int num_steps, std::int64_t num_paths,
                                   int p, std::uint64_t seed);

// Exact structural counts over a batch of simulated paths: running-max
// monotonicity violations and negative sqrt arguments must be zero by
// construction; the negative-variance frequency for the Volterra scheme is
// informational (it shrinks as n grows).
struct InvariantSweep {
    std::int64_t xbar_monotonicity_violations = 0;
    std::int64_t negative_sqrt_arguments = 0;
    std::int64_t negative_v_count = 0;
    std::int64_t total_samples = 0;
    double negative_v_frequency = 0.0;
};

InvariantSweep structural_invariant_sweep(SchemeKind scheme, const ModelParams& params,
                                          const Kernel& kernel, int num_steps,
                                          std::int64_t num_paths, std::uint64_t seed);

// z-score of mean(M_T) over num_paths integrated-scheme paths; |z| <= 4
// passes. z_bias shifts every Z draw and exists for the negative control.
struct MartingaleCheck {
    double mean = 0.0;
    double standard_error = 0.0;
    double z_score = 0.0;
    bool pass = true;
};

MartingaleCheck martingale_mean_check(const ModelParams& params, const Kernel& kernel,
                                      int num_steps, std::int64_t num_paths, std::uint64_t seed,
                                      double z_bias = 0.0);

}  // namespace rheston
