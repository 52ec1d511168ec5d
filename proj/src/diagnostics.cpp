#include "rheston/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace rheston {

HolderReport holder_scaling_report(SchemeKind scheme, const ModelParams& params,
                                   const Kernel& kernel, int num_steps, std::int64_t num_paths,
                                   int p, std::uint64_t seed) {
    if (num_steps < 64 || (num_steps & (num_steps - 1)) != 0)
        throw std::invalid_argument("holder_scaling_report: n must be a power of two >= 64");
    if (num_paths < 1000)
        throw std::invalid_argument("holder_scaling_report: need at least 10^3 paths");

    const TimeGrid grid = TimeGrid::uniform(num_steps, params.horizon);
    const KernelWeights weights(kernel, grid);

    // anchor s = T/2; lags T/2, T/4, ..., T/64
    const int anchor = num_steps / 2;
    std::vector<int> lag_steps;
    for (int d = 2; d <= 64; d *= 2) lag_steps.push_back(num_steps / d);

    HolderReport report;
    report.target = static_cast<double>(p) * kernel.hurst();
    for (int l : lag_steps)
        report.lags.emplace_back(grid.node(anchor), grid.node(anchor + l));
    report.empirical_moments.assign(lag_steps.size(), 0.0);

    VPath vbuf;
    XPath xbuf;
    for (std::int64_t j = 0; j < num_paths; ++j) {
        const IncrementStream stream(seed, j, grid);
        const std::vector<double>* series = nullptr;
        if (scheme == SchemeKind::Volterra) {
            simulate_v_path(params, weights, stream, vbuf);
            series = &vbuf.v;
        } else {
            simulate_x_path(params, weights, stream, xbuf);
            series = &xbuf.x;
        }
        const double base = (*series)[static_cast<std::size_t>(anchor)];
        for (std::size_t i = 0; i < lag_steps.size(); ++i) {
            const double inc =
                (*series)[static_cast<std::size_t>(anchor + lag_steps[i])] - base;
            report.empirical_moments[i] += std::pow(std::abs(inc), p);
        }
    }
    for (auto& m : report.empirical_moments) m /= static_cast<double>(num_paths);

    // least squares slope of log(moment) on log(lag)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n_pts = static_cast<double>(lag_steps.size());
    for (std::size_t i = 0; i < lag_steps.size(); ++i) {
        const double x = std::log(report.lags[i].second - report.lags[i].first);
        const double y = std::log(report.empirical_moments[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    report.fitted_slope = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
    return report;
}

InvariantSweep structural_invariant_sweep(SchemeKind scheme, const ModelParams& params,
                                          const Kernel& kernel, int num_steps,
                                          std::int64_t num_paths, std::uint64_t seed) {
    const TimeGrid grid = TimeGrid::uniform(num_steps, params.horizon);
    const KernelWeights weights(kernel, grid);

    InvariantSweep sweep;
    VPath vbuf;
    XPath xbuf;
    for (std::int64_t j = 0; j < num_paths; ++j) {
        const IncrementStream stream(seed, j, grid);
        if (scheme == SchemeKind::Volterra) {
            simulate_v_path(params, weights, stream, vbuf);
            for (int k = 0; k <= num_steps; ++k) {
                const double v = vbuf.v[static_cast<std::size_t>(k)];
                ++sweep.total_samples;
                if (v < 0.0) ++sweep.negative_v_count;
                // sqrt argument is (v)+ by construction
                if (std::max(v, 0.0) < 0.0) ++sweep.negative_sqrt_arguments;
            }
        } else {
            simulate_x_path(params, weights, stream, xbuf);
            for (int k = 1; k <= num_steps; ++k) {
                const double dxbar = xbuf.xbar[static_cast<std::size_t>(k)] -
                                     xbuf.xbar[static_cast<std::size_t>(k) - 1];
                ++sweep.total_samples;
                if (xbuf.xbar[static_cast<std::size_t>(k)] <
                    xbuf.xbar[static_cast<std::size_t>(k) - 1])
                    ++sweep.xbar_monotonicity_violations;
                if (dxbar < 0.0) ++sweep.negative_sqrt_arguments;
            }
        }
    }
    if (sweep.total_samples > 0)
        sweep.negative_v_frequency =
            static_cast<double>(sweep.negative_v_count) / static_cast<double>(sweep.total_samples);
    return sweep;
}

MartingaleCheck martingale_mean_check(const ModelParams& params, const Kernel& kernel,
                                      int num_steps, std::int64_t num_paths, std::uint64_t seed,
                                      double z_bias) {
    if (num_paths < 10000)
        throw std::invalid_argument("martingale_mean_check: need at least 10^4 paths");
    const TimeGrid grid = TimeGrid::uniform(num_steps, params.horizon);
    const KernelWeights weights(kernel, grid);

    std::vector<double> terminal(static_cast<std::size_t>(num_paths));
    XPath xbuf;
    for (std::int64_t j = 0; j < num_paths; ++j) {
        IncrementStream stream(seed, j, grid);
        if (z_bias != 0.0) stream = stream.with_bias(z_bias, 0.0);
        simulate_x_path(params, weights, stream, xbuf);
        terminal[static_cast<std::size_t>(j)] = xbuf.m.back();
    }
    const McEstimate est = estimate_from_samples(terminal);

    MartingaleCheck check;
    check.mean = est.mean;
    check.standard_error = est.stat_error;
    check.z_score = est.stat_error > 0.0 ? est.mean / est.stat_error : 0.0;
    check.pass = std::abs(check.z_score) <= 4.0;
    return check;
}

}  // namespace rheston
