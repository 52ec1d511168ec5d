#include "rheston/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rheston {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

class Entries {
public:
    explicit Entries(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string raw(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw ConfigError("missing config field '" + key + "'");
        return it->second;
    }

    std::string str(const std::string& key) const { return unquote(raw(key)); }

    double number(const std::string& key) const {
        const std::string v = str(key);
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("config field '" + key + "': expected a number, got '" + v + "'");
        }
    }

    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    long long integer(const std::string& key) const {
        const double x = number(key);
        const long long i = static_cast<long long>(x);
        if (static_cast<double>(i) != x)
            throw ConfigError("config field '" + key + "': expected an integer");
        return i;
    }

    long long integer_or(const std::string& key, long long fallback) const {
        return has(key) ? integer(key) : fallback;
    }

    bool boolean_or(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string v = str(key);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw ConfigError("config field '" + key + "': expected true|false");
    }

    const std::map<std::string, std::string>& map() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

}  // namespace

std::map<std::string, std::string> parse_flat_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        if (kv.count(key) > 0)
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> parse_flat_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_flat_text(buffer.str());
}

OutputFormat output_format_from_string(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("output.format: expected csv|json, got '" + name + "'");
}

Kernel kernel_from_entries(const std::map<std::string, std::string>& raw,
                           const std::string& prefix) {
    const Entries entries(raw);
    const std::string type_key = prefix + ".type";
    const std::string type = entries.has(type_key) ? entries.str(type_key) : "power_law";

    auto read_c = [&](double h) {
        const std::string key = prefix + ".c";
        if (!entries.has(key)) return 1.0 / std::tgamma(h + 0.5);
        const std::string v = entries.str(key);
        if (v == "gamma_normalized") return 1.0 / std::tgamma(h + 0.5);
        return entries.number(key);
    };

    try {
        if (type == "power_law") {
            const double h = entries.number_or(prefix + ".h", 0.1);
            return Kernel::power_law(read_c(h), h);
        }
        if (type == "exp_damped") {
            const double h = entries.number(prefix + ".h");
            return Kernel::exp_damped(read_c(h), entries.number(prefix + ".beta"), h);
        }
        if (type == "log") return Kernel::log_kernel();
        if (type == "sum")
            return Kernel::sum({kernel_from_entries(raw, prefix + ".left"),
                                kernel_from_entries(raw, prefix + ".right")});
        if (type == "product")
            return Kernel::product(kernel_from_entries(raw, prefix + ".left"),
                                   kernel_from_entries(raw, prefix + ".right"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(prefix) + ": " + e.what());
    }
    throw ConfigError(prefix + ".type: unknown kernel type '" + type + "'");
}

namespace {

Payoff payoff_from_entries(const Entries& entries, const ModelParams& model) {
    const std::string type = entries.str("payoff.type");
    const bool has_strike = entries.has("payoff.strike");
    if (type == "variance_swap") {
        if (has_strike) throw ConfigError("payoff.strike: variance_swap takes no strike");
        return Payoff::variance_swap();
    }
    if (type == "variance_call") {
        if (has_strike)
            throw ConfigError("payoff.strike: variance_call is struck at v0, drop the field");
        return Payoff::variance_call(model.v0);
    }
    if (!has_strike) throw ConfigError("missing config field 'payoff.strike'");
    const double strike = entries.number("payoff.strike");
    if (type == "european_call") return Payoff::european_call(strike);
    if (type == "asian_call") return Payoff::asian_call(strike);
    if (type == "lookback_call") return Payoff::lookback_call(strike);
    throw ConfigError("payoff.type: unknown payoff '" + type + "'");
}

ExperimentConfig build(const std::map<std::string, std::string>& raw) {
    const Entries entries(raw);

    ModelParams model;
    model.s0 = entries.number_or("model.s0", 1.0);
    model.v0 = entries.number_or("model.v0", 0.02);
    model.theta = entries.number_or("model.theta", 0.02);
    model.lambda = entries.number_or("model.lambda", 0.3);
    model.nu = entries.number_or("model.nu", 0.3);
    model.rho = entries.number_or("model.rho", -0.7);
    model.horizon = entries.number_or("model.horizon", 1.0);
    try {
        model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }

    McConfig mc;
    mc.num_paths = entries.integer_or("mc.num_paths", 100000);
    mc.master_seed = static_cast<std::uint64_t>(entries.integer_or("mc.seed", 0));
    mc.num_steps = static_cast<int>(entries.integer_or("mc.n", 320));
    if (entries.has("mc.scheme")) {
        try {
            mc.scheme = scheme_from_string(entries.str("mc.scheme"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("mc.scheme: ") + e.what());
        }
    }
    if (entries.has("mc.workers")) {
        const std::string w = entries.str("mc.workers");
        if (w == "auto")
            mc.workers = 0;
        else
            mc.workers = static_cast<int>(entries.integer("mc.workers"));
    }
    mc.options.clip_variance_in_x = entries.boolean_or("mc.clip_variance_in_x", false);
    mc.options.exact_theta_drift = entries.boolean_or("mc.exact_theta_drift", true);
    try {
        mc.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("mc: ") + e.what());
    }

    ExperimentConfig cfg{model, kernel_from_entries(raw, "kernel"), payoff_from_entries(entries, model),
                         mc, OutputFormat::Csv};
    if (entries.has("output.format"))
        cfg.output = output_format_from_string(entries.str("output.format"));
    return cfg;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) { return build(parse_flat_file(path)); }

ExperimentConfig config_from_text(const std::string& text) {
    return build(parse_flat_text(text));
}

}  // namespace rheston
