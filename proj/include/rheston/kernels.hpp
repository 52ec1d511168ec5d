#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "rheston/grid.hpp"

namespace rheston {

// Volterra kernel K on (0, T]. All variants are nonnegative, non-increasing
// and square-integrable near 0; pointwise evaluation at t <= 0 is a domain
// error (the power-law variants are singular at 0 and the schemes never need
// the value there).
class Kernel {
public:
    struct PowerLaw {
        double c;  // K(t) = c * t^(h - 1/2)
        double h;  // Hurst exponent, in (0, 1/2]
    };
    struct ExpDamped {
        double c;  // K(t) = c * exp(-beta t) * t^(h - 1/2)
        double beta;
        double h;
    };
    struct LogKernel {};  // K(t) = log(1 + 1/(t + 1))
    struct Sum {
        std::vector<Kernel> terms;
    };
    struct Product {
        std::vector<Kernel> factors;  // exactly two
    };
    using Variant = std::variant<PowerLaw, ExpDamped, LogKernel, Sum, Product>;

    static Kernel power_law(double c, double h);
    // c = 1 / Gamma(h + 1/2), the normalisation used throughout the tables.
    static Kernel gamma_power_law(double h);
    static Kernel exp_damped(double c, double beta, double h);
    static Kernel log_kernel();
    static Kernel sum(std::vector<Kernel> terms);
    static Kernel product(Kernel lhs, Kernel rhs);

    // K(t); throws std::domain_error for t <= 0.
    double evaluate(double t) const;
    double operator()(double t) const { return evaluate(t); }

    // The exponent H entering conditions (A2)/(A3). Sum/Product take the
    // minimum over constituents (the roughest factor binds).
    double hurst() const noexcept { return hurst_; }

    const Variant& spec() const noexcept { return *spec_; }
    const PowerLaw* as_power_law() const noexcept { return std::get_if<PowerLaw>(spec_.get()); }

private:
    explicit Kernel(Variant v);
    std::shared_ptr<const Variant> spec_;
    double hurst_ = 0.0;
};

// Precomputed table of the kernel evaluations the schemes need:
// w[k][i] = K(t_k - t_i) for 0 <= i < k <= n. On a uniform grid the values
// depend on the lag k - i only and a single O(n) array is stored; the
// observable values are identical to the dense definition either way.
//
// The table also caches D(t_k) = int_0^{t_k} K(t_k - s) s ds, the
// theta-independent factor of the exact linear drift convolution used by the
// integrated-variance scheme.
class KernelWeights {
public:
    KernelWeights(const Kernel& kernel, TimeGrid grid);

    const TimeGrid& grid() const noexcept { return grid_; }
    const Kernel& kernel() const noexcept { return kernel_; }

    double at(int k, int i) const {
        if (uniform_) return by_lag_[static_cast<std::size_t>(k - i) - 1];
        return dense_[static_cast<std::size_t>(k) * (static_cast<std::size_t>(k) - 1) / 2 +
                      static_cast<std::size_t>(i)];
    }
    bool uniform_storage() const noexcept { return uniform_; }
    // Lag array for uniform grids: lag(l) = K(l * dt), l = 1..n.
    std::span<const double> lags() const noexcept { return by_lag_; }

    // int_0^{t_k} K(t_k - s) s ds (multiply by theta for the drift term).
    double drift_moment(int k) const { return drift_moment_[static_cast<std::size_t>(k)]; }

private:
    Kernel kernel_;
    TimeGrid grid_;
    bool uniform_ = false;
    std::vector<double> by_lag_;
    std::vector<double> dense_;
    std::vector<double> drift_moment_;
};

// int_0^t K(t - s) * theta * s ds. Closed form (Beta/Gamma) for power-law
// kernels and sums of them; singularity-aware quadrature otherwise.
double exact_linear_drift_convolution(const Kernel& kernel, double theta, double t);

// Resolvent of the first kind of a power-law kernel: L(dt) = C_H t^-(H+1/2) dt
// with C_H fixed by (K*L)(t) = 1. Only defined for H < 1/2 (at H = 1/2 the
// resolvent degenerates to a point mass).
struct ResolventFirstKind {
    double normalizing_constant;  // C_H
    double exponent;              // H + 1/2, density = C_H * t^-exponent
    double density(double t) const;
};
ResolventFirstKind power_law_resolvent(const Kernel& kernel);

// Numerical check of Assumption (A2)/(A3): evaluates both left-hand sides
// exactly (the eta_n integrands are piecewise constant) on a lattice of
// (t, delta) pairs over a ladder of grid refinements and reports the largest
// observed ratio LHS / delta^(2H). A bounded maximum across refinements is
// evidence for the assumption with that H; a monotonically exploding ratio is
// reported as divergence rather than raised.
struct RegularityReport {
    double a2_sup_ratio = 0.0;
    double a3_sup_ratio = 0.0;
    bool diverged = false;
    std::vector<double> a2_by_refinement;
    std::vector<double> a3_by_refinement;
};
RegularityReport verify_regularity(const Kernel& kernel, const TimeGrid& grid, double hurst);

}  // namespace rheston
