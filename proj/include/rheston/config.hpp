#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "rheston/kernels.hpp"
#include "rheston/model.hpp"
#include "rheston/monte_carlo.hpp"
#include "rheston/payoffs.hpp"

namespace rheston {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };
OutputFormat output_format_from_string(const std::string& name);

// Full experiment description parsed from a flat key/value file:
//
//   model.s0 = 1.0            kernel.type = "power_law"
//   model.v0 = 0.02           kernel.c = "gamma_normalized"   # or a number
//   ...                       kernel.h = 0.1
//   payoff.type = "european_call"
//   payoff.strike = 1.0
//   mc.scheme = "integrated"  mc.num_paths = 100000  mc.n = 320
//   mc.seed = 0               mc.workers = "auto"
//   output.format = "csv"
//
// '#' starts a comment; string values may be quoted. Composite kernels nest
// with prefixes: kernel.type = "sum" plus kernel.left.* / kernel.right.*.
struct ExperimentConfig {
    ModelParams model;
    Kernel kernel;
    Payoff payoff;
    McConfig mc;
    OutputFormat output = OutputFormat::Csv;
};

// Raw key/value layer (exposed for tests).
std::map<std::string, std::string> parse_flat_file(const std::string& path);
std::map<std::string, std::string> parse_flat_text(const std::string& text);

// Typed load with field-level error messages (ConfigError).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_text(const std::string& text);

// Kernel sub-record under the given prefix (e.g. "kernel").
Kernel kernel_from_entries(const std::map<std::string, std::string>& entries,
                           const std::string& prefix);

}  // namespace rheston
