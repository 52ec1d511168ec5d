#pragma once

#include <vector>

#include "rheston/kernels.hpp"
#include "rheston/model.hpp"
#include "rheston/rng.hpp"
#include "rheston/scheme_v.hpp"  // SchemeOptions

namespace rheston {

// One trajectory of the integrated-variance scheme, with its auxiliary
// processes: running maximum Xbar (exact quadratic variation of M and Mperp),
// the two martingales, and the normals actually consumed — kept so the
// quadratic-variation identity can be re-verified from stored data.
struct XPath {
    std::vector<double> x;
    std::vector<double> xbar;
    std::vector<double> m;
    std::vector<double> m_perp;
    std::vector<double> y;
    std::vector<double> s;
    std::vector<double> z;       // Z_k, k = 1..n
    std::vector<double> z_perp;  // Z'_k
    bool finite = true;

    int num_steps() const noexcept { return static_cast<int>(y.size()) - 1; }
};

// Euler recursion
//   X_k    = V0 t_k + int_0^{t_k} K(t_k - s) theta s ds
//            + sum_{i<k} K(t_k - t_i) ( -lambda Xbar_i + nu M_i ) dt_{i+1}
//   Xbar_k = max(Xbar_{k-1}, X_k)
//   M_k    = M_{k-1} + sqrt(Xbar_k - Xbar_{k-1}) Z_k       (same for Mperp)
//   Y_k    = log S0 - Xbar_k / 2 + rho M_k + sqrt(1-rho^2) Mperp_k
// The theta drift uses the exact convolution by default; options can restore
// the fully discretised sum.
void simulate_x_path(const ModelParams& params, const KernelWeights& weights,
                     const IncrementStream& stream, XPath& out,
                     const SchemeOptions& options = {});
XPath simulate_x_path(const ModelParams& params, const KernelWeights& weights,
                      const IncrementStream& stream, const SchemeOptions& options = {});

// Verifies the discrete quadratic-variation identity
//   (M_i - M_{i-1})^2 = (Xbar_i - Xbar_{i-1}) Z_i^2   for every step i
// (and its Mperp analogue) from the stored arrays, to relative tolerance.
bool quadratic_variation_check(const XPath& path, double rel_tol = 1e-12);

}  // namespace rheston
