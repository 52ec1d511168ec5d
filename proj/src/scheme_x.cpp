#include "rheston/scheme_x.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace rheston {

void simulate_x_path(const ModelParams& params, const KernelWeights& weights,
                     const IncrementStream& stream, XPath& out, const SchemeOptions& options) {
    const TimeGrid& grid = weights.grid();
    const int n = grid.num_steps();
    const double log_s0 = std::log(params.s0);
    const double sqrt_rho_comp = std::sqrt(1.0 - params.rho * params.rho);

    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    out.x.assign(sz, 0.0);
    out.xbar.assign(sz, 0.0);
    out.m.assign(sz, 0.0);
    out.m_perp.assign(sz, 0.0);
    out.y.assign(sz, 0.0);
    out.s.assign(sz, 0.0);
    out.z.assign(static_cast<std::size_t>(n), 0.0);
    out.z_perp.assign(static_cast<std::size_t>(n), 0.0);
    out.finite = true;

    out.y[0] = log_s0;
    out.s[0] = params.s0;

    // q_i = -lambda Xbar_i + nu M_i, accumulated with dt folded in
    std::vector<double> drive(static_cast<std::size_t>(n), 0.0);
    const bool uniform = weights.uniform_storage();
    const auto lag = weights.lags();

    for (int k = 1; k <= n; ++k) {
        const double dt = grid.step(k);
        drive[static_cast<std::size_t>(k) - 1] =
            (-params.lambda * out.xbar[static_cast<std::size_t>(k) - 1] +
             params.nu * out.m[static_cast<std::size_t>(k) - 1]) *
            dt;

        double conv = 0.0;
        if (uniform) {
            const double* d = drive.data();
            const double* w = lag.data();
            for (int i = 0; i < k; ++i) conv += w[k - 1 - i] * d[i];
        } else {
            for (int i = 0; i < k; ++i)
                conv += weights.at(k, i) * drive[static_cast<std::size_t>(i)];
        }

        double theta_term;
        if (options.exact_theta_drift) {
            theta_term = params.theta * weights.drift_moment(k);
        } else {
            // discretised form: sum_i K(t_k - t_i) theta t_i dt_{i+1}
            theta_term = 0.0;
            for (int i = 1; i < k; ++i)
                theta_term += weights.at(k, i) * params.theta * grid.node(i) * grid.step(i + 1);
        }

        const double xk = params.v0 * grid.node(k) + theta_term + conv;
        out.x[static_cast<std::size_t>(k)] = xk;
        const double xbar_prev = out.xbar[static_cast<std::size_t>(k) - 1];
        const double xbar_k = xk > xbar_prev ? xk : xbar_prev;
        out.xbar[static_cast<std::size_t>(k)] = xbar_k;

        const double dxbar = xbar_k - xbar_prev;
        assert(dxbar >= 0.0);
        const double root = std::sqrt(dxbar);
        const double zk = stream.z(k);
        const double zpk = stream.z_perp(k);
        out.z[static_cast<std::size_t>(k) - 1] = zk;
        out.z_perp[static_cast<std::size_t>(k) - 1] = zpk;
        out.m[static_cast<std::size_t>(k)] = out.m[static_cast<std::size_t>(k) - 1] + root * zk;
        out.m_perp[static_cast<std::size_t>(k)] =
            out.m_perp[static_cast<std::size_t>(k) - 1] + root * zpk;

        out.y[static_cast<std::size_t>(k)] = log_s0 - 0.5 * xbar_k +
                                             params.rho * out.m[static_cast<std::size_t>(k)] +
                                             sqrt_rho_comp * out.m_perp[static_cast<std::size_t>(k)];
        out.s[static_cast<std::size_t>(k)] = std::exp(out.y[static_cast<std::size_t>(k)]);
    }

    for (int k = 0; k <= n; ++k) {
        if (!std::isfinite(out.x[static_cast<std::size_t>(k)]) ||
            !std::isfinite(out.y[static_cast<std::size_t>(k)])) {
            out.finite = false;
            break;
        }
    }
}

XPath simulate_x_path(const ModelParams& params, const KernelWeights& weights,
                      const IncrementStream& stream, const SchemeOptions& options) {
    XPath out;
    simulate_x_path(params, weights, stream, out, options);
    return out;
}

bool quadratic_variation_check(const XPath& path, double rel_tol) {
    const int n = path.num_steps();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i <= n; ++i) {
        const double m_hi = path.m[static_cast<std::size_t>(i)];
        const double m_lo = path.m[static_cast<std::size_t>(i) - 1];
        const double p_hi = path.m_perp[static_cast<std::size_t>(i)];
        const double p_lo = path.m_perp[static_cast<std::size_t>(i) - 1];
        const double dm = m_hi - m_lo;
        const double dmp = p_hi - p_lo;
        const double dxbar =
            path.xbar[static_cast<std::size_t>(i)] - path.xbar[static_cast<std::size_t>(i) - 1];
        const double z = path.z[static_cast<std::size_t>(i) - 1];
        const double zp = path.z_perp[static_cast<std::size_t>(i) - 1];
        const double lhs_m = dm * dm;
        const double rhs_m = dxbar * z * z;
        const double lhs_p = dmp * dmp;
        const double rhs_p = dxbar * zp * zp;
        // the increments are recovered from stored running sums, so allow the
        // representation-rounding floor ~ eps * |M| on each difference
        const double floor_m = 8.0 * eps * (std::abs(m_hi) + std::abs(m_lo)) *
                               (std::abs(dm) + eps * (std::abs(m_hi) + std::abs(m_lo)));
        const double floor_p = 8.0 * eps * (std::abs(p_hi) + std::abs(p_lo)) *
                               (std::abs(dmp) + eps * (std::abs(p_hi) + std::abs(p_lo)));
        const double scale_m = std::max(std::abs(lhs_m), std::abs(rhs_m));
        const double scale_p = std::max(std::abs(lhs_p), std::abs(rhs_p));
        if (std::abs(lhs_m - rhs_m) > rel_tol * scale_m + floor_m) return false;
        if (std::abs(lhs_p - rhs_p) > rel_tol * scale_p + floor_p) return false;
    }
    return true;
}

}  // namespace rheston
