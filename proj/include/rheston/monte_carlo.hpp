#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rheston/kernels.hpp"
#include "rheston/model.hpp"
#include "rheston/payoffs.hpp"
#include "rheston/scheme_v.hpp"
#include "rheston/scheme_x.hpp"

namespace rheston {

enum class SchemeKind { Volterra, Integrated };

std::string to_string(SchemeKind scheme);
SchemeKind scheme_from_string(const std::string& name);

struct McConfig {
    std::int64_t num_paths = 100000;  // M >= 2
    std::uint64_t master_seed = 0;
    SchemeKind scheme = SchemeKind::Integrated;
    int num_steps = 320;  // n
    int workers = 0;      // 0 = auto (hardware concurrency)
    SchemeOptions options{};

    void validate() const;
};

// Mean / statistical error / confidence interval triple. stat_error is the
// population standard deviation of the payoff samples divided by sqrt(M) (no
// Bessel correction); the interval is mean -/+ 2 * stat_error. The value is
// bit-identical for a fixed (config, params) whatever the worker count.
struct McEstimate {
    double mean = 0.0;
    double stat_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t num_paths = 0;
    double wall_time_seconds = 0.0;
    std::int64_t fault_count = 0;
};

// A simulated path produced a non-finite value; the run is aborted rather
// than silently polluting the mean.
class PathFaultError : public std::runtime_error {
public:
    PathFaultError(std::int64_t fault_count, std::int64_t num_paths);
    std::int64_t fault_count() const noexcept { return fault_count_; }

private:
    std::int64_t fault_count_;
};

// Estimator core: mean, Sigma_M and the +-2 Sigma_M interval from a fixed
// sample array, reduced by deterministic pairwise summation.
McEstimate estimate_from_samples(std::span<const double> samples);

McEstimate price(const ModelParams& params, const Kernel& kernel, const Payoff& payoff,
                 const McConfig& config);

struct TableRow {
    std::string scheme;
    int num_steps = 0;
    double mean = 0.0;
    double stat_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double wall_time_seconds = 0.0;
};

// One row per (scheme, n), both schemes, in the given n order.
std::vector<TableRow> convergence_table(const ModelParams& params, const Kernel& kernel,
                                        const Payoff& payoff, const std::vector<int>& n_list,
                                        std::int64_t num_paths, std::uint64_t master_seed,
                                        int workers = 0, const SchemeOptions& options = {});

// Deterministic pairwise (tree) reduction; exposed for reuse in diagnostics.
double pairwise_sum(std::span<const double> values);

}  // namespace rheston
