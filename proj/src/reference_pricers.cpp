#include "rheston/reference_pricers.hpp"

#include <cmath>
#include <numbers>

#include "rheston/quadrature.hpp"

namespace rheston {

namespace {

// Kernel moments over the lag-l subinterval [(l-1)h, lh]:
//   mu0[l-1] = int K(tau) dtau
//   mu1[l-1] = (1/h) int K(tau) (l h - tau) dtau   (weight on the earlier node)
struct KernelMoments {
    std::vector<double> mu0;
    std::vector<double> mu1;
};

KernelMoments kernel_moments(const Kernel& kernel, double h, int m) {
    KernelMoments mom;
    mom.mu0.resize(static_cast<std::size_t>(m));
    mom.mu1.resize(static_cast<std::size_t>(m));
    if (const auto* pl = kernel.as_power_law()) {
        const double a = pl->h + 0.5;
        const double c = pl->c;
        double ta_prev = 0.0;
        double ta1_prev = 0.0;
        for (int l = 1; l <= m; ++l) {
            const double t2 = l * h;
            const double ta = std::pow(t2, a);
            const double ta1 = std::pow(t2, a + 1.0);
            const double m0 = c * (ta - ta_prev) / a;
            const double m1 = (c / h) * (t2 * (ta - ta_prev) / a - (ta1 - ta1_prev) / (a + 1.0));
            mom.mu0[static_cast<std::size_t>(l) - 1] = m0;
            mom.mu1[static_cast<std::size_t>(l) - 1] = m1;
            ta_prev = ta;
            ta1_prev = ta1;
        }
        return mom;
    }
    const double p = kernel.hurst() + 0.5;
    for (int l = 1; l <= m; ++l) {
        const double lo = (l - 1) * h;
        const double hi = l * h;
        auto f0 = [&](double tau) { return kernel.evaluate(tau); };
        auto f1 = [&](double tau) { return kernel.evaluate(tau) * (hi - tau) / h; };
        if (l == 1) {
            mom.mu0[0] = integrate_singular_left(f0, 0.0, hi, p, 1e-12).value;
            mom.mu1[0] = integrate_singular_left(f1, 0.0, hi, p, 1e-12).value;
        } else {
            mom.mu0[static_cast<std::size_t>(l) - 1] = integrate_adaptive(f0, lo, hi, 1e-12).value;
            mom.mu1[static_cast<std::size_t>(l) - 1] = integrate_adaptive(f1, lo, hi, 1e-12).value;
        }
    }
    return mom;
}

}  // namespace

VolterraOdeSolution solve_expected_integrated_variance(const ModelParams& params,
                                                       const Kernel& kernel, double t,
                                                       int resolution) {
    if (resolution < 100)
        throw std::invalid_argument("expected_integrated_variance: resolution must be >= 100");
    if (!(t > 0.0)) throw std::invalid_argument("expected_integrated_variance: t must be positive");
    const int m = resolution;
    const double h = t / m;
    const KernelMoments mom = kernel_moments(kernel, h, m);

    VolterraOdeSolution sol{TimeGrid::uniform(m, t), std::vector<double>()};
    sol.values.assign(static_cast<std::size_t>(m) + 1, 0.0);
    std::vector<double> g(static_cast<std::size_t>(m) + 1, 0.0);  // theta s - lambda u

    // implicit coefficient: the weight the lag-1 subinterval puts on g_k
    const double wk = mom.mu1[0];
    for (int k = 1; k <= m; ++k) {
        double acc = 0.0;
        for (int j = 0; j < k; ++j) {
            const int l = k - j;
            const double w0 = mom.mu0[static_cast<std::size_t>(l) - 1] -
                              mom.mu1[static_cast<std::size_t>(l) - 1];
            acc += w0 * g[static_cast<std::size_t>(j)];
            if (j + 1 < k)
                acc += mom.mu1[static_cast<std::size_t>(l) - 1] * g[static_cast<std::size_t>(j) + 1];
        }
        const double tk = k * h;
        const double u =
            (params.v0 * tk + acc + wk * params.theta * tk) / (1.0 + params.lambda * wk);
        sol.values[static_cast<std::size_t>(k)] = u;
        g[static_cast<std::size_t>(k)] = params.theta * tk - params.lambda * u;
    }
    return sol;
}

double expected_integrated_variance(const ModelParams& params, const Kernel& kernel, double t,
                                    int resolution) {
    const double coarse = solve_expected_integrated_variance(params, kernel, t, resolution)
                              .values.back();
    const double fine = solve_expected_integrated_variance(params, kernel, t, 2 * resolution)
                            .values.back();
    if (std::abs(fine - coarse) > 1e-6)
        throw SolverError("expected_integrated_variance: grid doubling did not converge");
    return fine;
}

namespace {

using dcomplex = std::complex<double>;

enum class TransformKind { LogPrice, IntegratedVariance };

dcomplex riccati_rhs(TransformKind kind, const ModelParams& p, dcomplex z, dcomplex psi) {
    if (kind == TransformKind::LogPrice)
        return 0.5 * (z * z - z) + (p.rho * p.nu * z - p.lambda) * psi +
               0.5 * p.nu * p.nu * psi * psi;
    return z - p.lambda * psi + 0.5 * p.nu * p.nu * psi * psi;
}

// Fractional Adams predictor-corrector for psi = scale * I^alpha F(psi),
// scale = c Gamma(alpha) (1 for the gamma-normalised kernel). One extra
// corrector pass after the standard PECE step.
RiccatiSolution solve_riccati(TransformKind kind, const ModelParams& params,
                              const Kernel::PowerLaw& pl, dcomplex z, int m, double horizon) {
    const double alpha = pl.h + 0.5;
    const double scale = pl.c * std::tgamma(alpha);
    const double h = horizon / m;

    std::vector<double> pow_a(static_cast<std::size_t>(m) + 2);
    std::vector<double> pow_a1(static_cast<std::size_t>(m) + 2);
    for (int j = 0; j <= m + 1; ++j) {
        pow_a[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(j), alpha);
        pow_a1[static_cast<std::size_t>(j)] = std::pow(static_cast<double>(j), alpha + 1.0);
    }

    RiccatiSolution sol;
    sol.step = h;
    sol.psi.assign(static_cast<std::size_t>(m) + 1, dcomplex(0.0, 0.0));
    sol.f_values.assign(static_cast<std::size_t>(m) + 1, dcomplex(0.0, 0.0));
    sol.f_values[0] = riccati_rhs(kind, params, z, dcomplex(0.0, 0.0));

    const double cb = scale * std::pow(h, alpha) / std::tgamma(alpha + 1.0);
    const double ca = scale * std::pow(h, alpha) / std::tgamma(alpha + 2.0);

    for (int k = 0; k < m; ++k) {
        dcomplex pred(0.0, 0.0);
        dcomplex corr(0.0, 0.0);
        for (int j = 0; j <= k; ++j) {
            const int l = k - j;
            const double b = pow_a[static_cast<std::size_t>(l) + 1] - pow_a[static_cast<std::size_t>(l)];
            double a;
            if (j == 0) {
                a = pow_a1[static_cast<std::size_t>(k)] -
                    (k - alpha) * pow_a[static_cast<std::size_t>(k) + 1];
            } else {
                a = pow_a1[static_cast<std::size_t>(l) + 2] + pow_a1[static_cast<std::size_t>(l)] -
                    2.0 * pow_a1[static_cast<std::size_t>(l) + 1];
            }
            const dcomplex fj = sol.f_values[static_cast<std::size_t>(j)];
            pred += b * fj;
            corr += a * fj;
        }
        dcomplex psi_next = ca * (corr + riccati_rhs(kind, params, z, cb * pred));
        psi_next = ca * (corr + riccati_rhs(kind, params, z, psi_next));
        if (!std::isfinite(psi_next.real()) || !std::isfinite(psi_next.imag()))
            throw SolverError("Riccati-Volterra solve diverged");
        sol.psi[static_cast<std::size_t>(k) + 1] = psi_next;
        sol.f_values[static_cast<std::size_t>(k) + 1] = riccati_rhs(kind, params, z, psi_next);
    }
    return sol;
}

dcomplex log_transform(TransformKind kind, const ModelParams& params, const Kernel& kernel,
                       dcomplex z, int m) {
    if (m < 200) throw std::invalid_argument("log_transform: resolution must be >= 200");
    const auto* pl = kernel.as_power_law();
    if (pl == nullptr)
        throw std::invalid_argument("characteristic functions require a power-law kernel");
    if (m % 2 != 0) ++m;
    const double horizon = params.horizon;
    const RiccatiSolution sol = solve_riccati(kind, params, *pl, z, m, horizon);

    // exponent = int_0^T F(psi(s)) g0(T - s) ds, g0(t) = V0 + theta c t^a / a
    const double alpha = pl->h + 0.5;
    const double h = sol.step;
    std::vector<dcomplex> q(static_cast<std::size_t>(m) + 1);
    for (int j = 0; j <= m; ++j) {
        const double ts = horizon - j * h;
        const double g0 = params.v0 + params.theta * pl->c * std::pow(ts, alpha) / alpha;
        q[static_cast<std::size_t>(j)] = sol.f_values[static_cast<std::size_t>(j)] * g0;
    }
    // composite Simpson
    dcomplex acc = q[0] + q[static_cast<std::size_t>(m)];
    for (int j = 1; j < m; j += 2) acc += 4.0 * q[static_cast<std::size_t>(j)];
    for (int j = 2; j < m; j += 2) acc += 2.0 * q[static_cast<std::size_t>(j)];
    dcomplex exponent = acc * (h / 3.0);

    if (kind == TransformKind::LogPrice) exponent += z * std::log(params.s0);
    return exponent;
}

}  // namespace

std::complex<double> log_transform_logS(const ModelParams& params, const Kernel& kernel,
                                        std::complex<double> z, int resolution) {
    return log_transform(TransformKind::LogPrice, params, kernel, z, resolution);
}

std::complex<double> log_transform_X(const ModelParams& params, const Kernel& kernel,
                                     std::complex<double> z, int resolution) {
    return log_transform(TransformKind::IntegratedVariance, params, kernel, z, resolution);
}

std::complex<double> char_fn_logS(const ModelParams& params, const Kernel& kernel, double u,
                                  int resolution) {
    return std::exp(log_transform_logS(params, kernel, dcomplex(0.0, u), resolution));
}

std::complex<double> char_fn_X(const ModelParams& params, const Kernel& kernel, double u,
                               int resolution) {
    return std::exp(log_transform_X(params, kernel, dcomplex(0.0, u), resolution));
}

namespace {

// Panel-by-panel Gauss-Legendre sweep of int_0^inf integrand(u) du with a
// tail stop: quit after two consecutive panels whose node maxima fall under
// the threshold. Each panel is split into `cells_per_panel` fixed 15-point
// cells; doubling cells_per_panel doubles the node density.
double sweep_integral(const std::function<double(double)>& integrand, double panel_width,
                      int cells_per_panel, double tail_threshold, double u_cap,
                      bool* hit_cap = nullptr) {
    double total = 0.0;
    int quiet = 0;
    double u0 = 0.0;
    if (hit_cap) *hit_cap = false;
    while (u0 < u_cap && quiet < 2) {
        double panel_value = 0.0;
        double panel_peak = 0.0;
        const double cell_w = panel_width / cells_per_panel;
        auto probe = [&](double u) {
            const double v = integrand(u);
            panel_peak = std::max(panel_peak, std::abs(v));
            return v;
        };
        for (int c = 0; c < cells_per_panel; ++c) {
            const double a = u0 + c * cell_w;
            panel_value += gauss_fixed(probe, a, a + cell_w);
        }
        total += panel_value;
        u0 += panel_width;
        if (panel_peak < tail_threshold)
            ++quiet;
        else
            quiet = 0;
    }
    if (u0 >= u_cap && quiet < 2 && hit_cap) *hit_cap = true;
    return total;
}

}  // namespace

double fourier_call_price(const CharFn& phi, double strike, double damping, double tolerance) {
    if (!(damping > 0.0)) throw std::invalid_argument("fourier_call_price: damping must be > 0");
    const double k = std::log(strike);
    const double a = damping;

    auto integrand = [&](double u) {
        const dcomplex w(u, -(a + 1.0));
        const dcomplex top = std::exp(dcomplex(0.0, -u * k)) * phi(w);
        const dcomplex bottom(a * a + a - u * u, u * (2.0 * a + 1.0));
        return (top / bottom).real();
    };
    auto price_once = [&](int cells, double tail, bool* capped) {
        return std::exp(-a * k) / std::numbers::pi *
               sweep_integral(integrand, 16.0, cells, tail, 4000.0, capped);
    };

    bool capped = false;
    const double coarse = price_once(2, 1e-12, &capped);
    if (capped) throw SolverError("fourier_call_price: inversion integral did not decay");
    const double fine = price_once(4, 1e-13, &capped);
    if (capped || std::abs(fine - coarse) > tolerance)
        throw SolverError("fourier_call_price: inversion integral did not converge");
    return fine;
}

double fourier_arithmetic_call_price(const MgfFn& mgf, double mean_value, double strike,
                                     double damping, double tolerance) {
    if (!(damping > 0.0))
        throw std::invalid_argument("fourier_arithmetic_call_price: damping must be > 0");

    auto integrand = [&](double u) {
        const dcomplex z(-damping, u);
        const dcomplex val = std::exp(-z * strike) * mgf(z) / (z * z);
        return val.real();
    };
    auto put_once = [&](int cells, double tail, bool* capped) {
        return sweep_integral(integrand, 64.0, cells, tail, 40000.0, capped) / std::numbers::pi;
    };

    bool capped = false;
    const double coarse = put_once(1, 1e-11, &capped);
    if (capped) throw SolverError("fourier_arithmetic_call_price: integral did not decay");
    const double fine = put_once(2, 1e-12, &capped);
    if (capped || std::abs(fine - coarse) > tolerance)
        throw SolverError("fourier_arithmetic_call_price: integral did not converge");
    return mean_value - strike + fine;
}

double reference_european_call(const ModelParams& params, const Kernel& kernel, double strike,
                               double damping, int resolution, double tolerance) {
    auto price_with = [&](int m) {
        CharFn phi = [&, m](dcomplex w) {
            return std::exp(log_transform_logS(params, kernel, dcomplex(0.0, 1.0) * w, m));
        };
        return fourier_call_price(phi, strike, damping, tolerance);
    };
    const double coarse = price_with(resolution);
    const double fine = price_with(2 * resolution);
    if (std::abs(fine - coarse) > tolerance)
        throw SolverError("reference_european_call: Riccati grid doubling did not converge");
    return fine;
}

double reference_variance_call(const ModelParams& params, const Kernel& kernel, double damping,
                               int resolution, double tolerance) {
    const double mean = expected_integrated_variance(params, kernel, params.horizon);
    auto price_with = [&](int m) {
        MgfFn mgf = [&, m](dcomplex z) { return std::exp(log_transform_X(params, kernel, z, m)); };
        return fourier_arithmetic_call_price(mgf, mean, params.v0, damping, tolerance);
    };
    const double coarse = price_with(resolution);
    const double fine = price_with(2 * resolution);
    if (std::abs(fine - coarse) > tolerance)
        throw SolverError("reference_variance_call: Riccati grid doubling did not converge");
    return fine;
}

}  // namespace rheston
