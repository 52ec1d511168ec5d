#include "rheston/scheme_v.hpp"

#include <cassert>
#include <cmath>

namespace rheston {

void simulate_v_path(const ModelParams& params, const KernelWeights& weights,
                     const IncrementStream& stream, VPath& out, const SchemeOptions& options) {
    const TimeGrid& grid = weights.grid();
    const int n = grid.num_steps();
    const double sqrt_rho_comp = std::sqrt(1.0 - params.rho * params.rho);

    out.y.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.v.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.s.assign(static_cast<std::size_t>(n) + 1, 0.0);
    out.finite = true;

    out.y[0] = std::log(params.s0);
    out.v[0] = params.v0;
    out.s[0] = params.s0;

    // innovations d_i = (theta - lambda (V_i)+) dt_{i+1} + nu sqrt((V_i)+) dW_{i+1}
    std::vector<double> innov(static_cast<std::size_t>(n), 0.0);
    const bool uniform = weights.uniform_storage();
    const auto lag = weights.lags();

    for (int k = 1; k <= n; ++k) {
        const double dt = grid.step(k);
        const double v_prev = out.v[static_cast<std::size_t>(k) - 1];
        const double v_pos = v_prev > 0.0 ? v_prev : 0.0;
        assert(v_pos >= 0.0);
        const double root_v = std::sqrt(v_pos);

        innov[static_cast<std::size_t>(k) - 1] =
            (params.theta - params.lambda * v_pos) * dt + params.nu * root_v * stream.dw(k);

        double conv = 0.0;
        if (uniform) {
            const double* d = innov.data();
            const double* w = lag.data();
            for (int i = 0; i < k; ++i) conv += w[k - 1 - i] * d[i];
        } else {
            for (int i = 0; i < k; ++i)
                conv += weights.at(k, i) * innov[static_cast<std::size_t>(i)];
        }
        out.v[static_cast<std::size_t>(k)] = params.v0 + conv;

        out.y[static_cast<std::size_t>(k)] =
            out.y[static_cast<std::size_t>(k) - 1] - 0.5 * v_pos * dt +
            root_v * (params.rho * stream.dw(k) + sqrt_rho_comp * stream.dw_perp(k));
        out.s[static_cast<std::size_t>(k)] = std::exp(out.y[static_cast<std::size_t>(k)]);
    }

    out.x = integrated_variance(out, grid, options.clip_variance_in_x);

    for (int k = 0; k <= n; ++k) {
        if (!std::isfinite(out.v[static_cast<std::size_t>(k)]) ||
            !std::isfinite(out.y[static_cast<std::size_t>(k)])) {
            out.finite = false;
            break;
        }
    }
}

VPath simulate_v_path(const ModelParams& params, const KernelWeights& weights,
                      const IncrementStream& stream, const SchemeOptions& options) {
    VPath out;
    simulate_v_path(params, weights, stream, out, options);
    return out;
}

std::vector<double> integrated_variance(const VPath& path, const TimeGrid& grid,
                                        bool clip_variance) {
    const int n = path.num_steps();
    std::vector<double> x(static_cast<std::size_t>(n) + 1, 0.0);
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
        double v = path.v[static_cast<std::size_t>(k) - 1];
        if (clip_variance && v < 0.0) v = 0.0;
        acc += v * grid.step(k);
        x[static_cast<std::size_t>(k)] = acc;
    }
    return x;
}

}  // namespace rheston
