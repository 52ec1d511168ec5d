#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rheston/config.hpp"
#include "rheston/diagnostics.hpp"
#include "rheston/kernels.hpp"
#include "rheston/monte_carlo.hpp"
#include "rheston/reference_pricers.hpp"
#include "rheston/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
    std::string config_path;
    std::optional<long long> seed;
    std::optional<int> workers;
    std::optional<std::string> out_format;
};

rheston::ExperimentConfig load_with_overrides(const GlobalFlags& flags) {
    rheston::ExperimentConfig cfg = rheston::load_config(flags.config_path);
    if (flags.seed) cfg.mc.master_seed = static_cast<std::uint64_t>(*flags.seed);
    if (flags.workers) cfg.mc.workers = *flags.workers;
    if (flags.out_format) cfg.output = rheston::output_format_from_string(*flags.out_format);
    return cfg;
}

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                             : comma - pos);
        if (!item.empty()) out.push_back(std::stoi(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int run_price(const GlobalFlags& flags) {
    const auto cfg = load_with_overrides(flags);
    const auto estimate = rheston::price(cfg.model, cfg.kernel, cfg.payoff, cfg.mc);
    const std::string scheme = rheston::to_string(cfg.mc.scheme);
    if (cfg.output == rheston::OutputFormat::Json)
        std::cout << rheston::estimate_to_json(estimate, scheme, cfg.mc.num_steps);
    else
        std::cout << rheston::estimate_to_csv(estimate, scheme, cfg.mc.num_steps);
    return kExitOk;
}

std::optional<double> reference_value_for(const rheston::ExperimentConfig& cfg) {
    using Type = rheston::Payoff::Type;
    switch (cfg.payoff.type) {
        case Type::EuropeanCall:
            return rheston::reference_european_call(cfg.model, cfg.kernel, cfg.payoff.strike);
        case Type::VarianceSwap:
            return rheston::expected_integrated_variance(cfg.model, cfg.kernel, cfg.model.horizon);
        case Type::VarianceCall:
            return rheston::reference_variance_call(cfg.model, cfg.kernel);
        default:
            return std::nullopt;  // Asian / lookback have no deterministic pricer
    }
}

int run_table(const GlobalFlags& flags, const std::string& n_list_text, bool with_reference) {
    const auto cfg = load_with_overrides(flags);
    const std::vector<int> n_list = parse_n_list(n_list_text);
    if (n_list.empty()) throw CLI::ValidationError("--n-list", "empty n list");

    std::optional<double> reference;
    if (with_reference) reference = reference_value_for(cfg);

    const auto rows = rheston::convergence_table(cfg.model, cfg.kernel, cfg.payoff, n_list,
                                                 cfg.mc.num_paths, cfg.mc.master_seed,
                                                 cfg.mc.workers, cfg.mc.options);
    if (cfg.output == rheston::OutputFormat::Json)
        std::cout << rheston::table_to_json(rows, reference);
    else
        std::cout << rheston::table_to_csv(rows, reference);
    return kExitOk;
}

int run_reference(const GlobalFlags& flags, const std::string& instrument) {
    const auto cfg = load_with_overrides(flags);
    double value = 0.0;
    if (instrument == "european_call") {
        const double strike =
            cfg.payoff.type == rheston::Payoff::Type::EuropeanCall ? cfg.payoff.strike : 1.0;
        value = rheston::reference_european_call(cfg.model, cfg.kernel, strike);
    } else if (instrument == "variance_swap") {
        value = rheston::expected_integrated_variance(cfg.model, cfg.kernel, cfg.model.horizon);
    } else if (instrument == "variance_call") {
        value = rheston::reference_variance_call(cfg.model, cfg.kernel);
    } else {
        throw CLI::ValidationError("--instrument",
                                   "expected european_call|variance_swap|variance_call");
    }
    nlohmann::json doc{{"instrument", instrument},
                       {"value", value},
                       {"convergence", "grid doubling and truncation doubling both verified"}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int run_diagnose(const GlobalFlags& flags, const std::string& check) {
    const auto cfg = load_with_overrides(flags);
    nlohmann::json doc;
    doc["check"] = check;
    if (check == "holder") {
        // power-of-two grid for the dyadic lag ladder
        int n = 64;
        while (2 * n <= cfg.mc.num_steps) n *= 2;
        const auto report = rheston::holder_scaling_report(cfg.mc.scheme, cfg.model, cfg.kernel, n,
                                                           cfg.mc.num_paths, 2,
                                                           cfg.mc.master_seed);
        doc["n"] = n;
        doc["fitted_slope"] = report.fitted_slope;
        doc["target"] = report.target;
        doc["lags"] = nlohmann::json::array();
        for (std::size_t i = 0; i < report.lags.size(); ++i)
            doc["lags"].push_back({{"s", report.lags[i].first},
                                   {"t", report.lags[i].second},
                                   {"moment", report.empirical_moments[i]}});
    } else if (check == "invariants") {
        const auto sweep = rheston::structural_invariant_sweep(cfg.mc.scheme, cfg.model, cfg.kernel,
                                                               cfg.mc.num_steps, cfg.mc.num_paths,
                                                               cfg.mc.master_seed);
        doc["xbar_monotonicity_violations"] = sweep.xbar_monotonicity_violations;
        doc["negative_sqrt_arguments"] = sweep.negative_sqrt_arguments;
        doc["negative_v_count"] = sweep.negative_v_count;
        doc["total_samples"] = sweep.total_samples;
        doc["negative_v_frequency"] = sweep.negative_v_frequency;
    } else if (check == "martingale") {
        const auto check_result = rheston::martingale_mean_check(cfg.model, cfg.kernel,
                                                                 cfg.mc.num_steps, cfg.mc.num_paths,
                                                                 cfg.mc.master_seed);
        doc["mean"] = check_result.mean;
        doc["standard_error"] = check_result.standard_error;
        doc["z_score"] = check_result.z_score;
        doc["pass"] = check_result.pass;
    } else {
        throw CLI::ValidationError("--check", "expected holder|invariants|martingale");
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int run_validate_kernel(const GlobalFlags& flags, int grid_n) {
    const auto cfg = load_with_overrides(flags);
    const rheston::TimeGrid grid = rheston::TimeGrid::uniform(grid_n, cfg.model.horizon);
    const auto report = rheston::verify_regularity(cfg.kernel, grid, cfg.kernel.hurst());
    nlohmann::json doc{{"hurst", cfg.kernel.hurst()},
                       {"a2_sup_ratio", report.a2_sup_ratio},
                       {"a3_sup_ratio", report.a3_sup_ratio},
                       {"diverged", report.diverged},
                       {"a2_by_refinement", report.a2_by_refinement},
                       {"a3_by_refinement", report.a3_by_refinement}};
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rough Heston simulation and pricing engine"};
    app.require_subcommand(1);

    GlobalFlags flags;
    std::string n_list_text = "4,10,20,40,80,160,320";
    bool with_reference = false;
    std::string instrument;
    std::string check;
    int validate_grid_n = 64;

    auto add_common = [&](CLI::App* cmd, bool config_required = true) {
        auto* opt = cmd->add_option("--config", flags.config_path, "experiment config file");
        if (config_required) opt->required();
        cmd->add_option("--seed", flags.seed, "override mc.seed");
        cmd->add_option("--workers", flags.workers, "override mc.workers (0 = auto)");
        cmd->add_option("--out", flags.out_format, "output format: csv|json");
    };

    auto* price_cmd = app.add_subcommand("price", "Monte-Carlo price for the configured payoff");
    add_common(price_cmd);

    auto* table_cmd = app.add_subcommand("table", "convergence table over a ladder of n");
    add_common(table_cmd);
    table_cmd->add_option("--n-list", n_list_text, "comma-separated grid sizes");
    table_cmd->add_flag("--reference", with_reference,
                        "prepend the deterministic reference value when one exists");

    auto* ref_cmd = app.add_subcommand("reference", "deterministic reference pricers");
    add_common(ref_cmd);
    ref_cmd->add_option("--instrument", instrument,
                        "european_call|variance_swap|variance_call")
        ->required();

    auto* diag_cmd = app.add_subcommand("diagnose", "statistical verification checks");
    add_common(diag_cmd);
    diag_cmd->add_option("--check", check, "holder|invariants|martingale")->required();

    auto* vk_cmd = app.add_subcommand("validate-kernel", "regularity condition check");
    add_common(vk_cmd);
    vk_cmd->add_option("--grid-n", validate_grid_n, "base grid size for the eta map");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (price_cmd->parsed()) return run_price(flags);
        if (table_cmd->parsed()) return run_table(flags, n_list_text, with_reference);
        if (ref_cmd->parsed()) return run_reference(flags, instrument);
        if (diag_cmd->parsed()) return run_diagnose(flags, check);
        if (vk_cmd->parsed()) return run_validate_kernel(flags, validate_grid_n);
    } catch (const rheston::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
