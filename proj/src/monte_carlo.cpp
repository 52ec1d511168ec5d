#include "rheston/monte_carlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace rheston {

std::string to_string(SchemeKind scheme) {
    return scheme == SchemeKind::Volterra ? "volterra" : "integrated";
}

SchemeKind scheme_from_string(const std::string& name) {
    if (name == "volterra") return SchemeKind::Volterra;
    if (name == "integrated") return SchemeKind::Integrated;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected volterra|integrated)");
}

void McConfig::validate() const {
    if (num_paths < 2) throw std::invalid_argument("McConfig: num_paths must be >= 2");
    if (num_steps < 1) throw std::invalid_argument("McConfig: num_steps must be >= 1");
    if (workers < 0) throw std::invalid_argument("McConfig: workers must be >= 0");
}

PathFaultError::PathFaultError(std::int64_t fault_count, std::int64_t num_paths)
    : std::runtime_error("Monte-Carlo run failed: " + std::to_string(fault_count) + " of " +
                         std::to_string(num_paths) + " paths produced non-finite values"),
      fault_count_(fault_count) {}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 16) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

McEstimate estimate_from_samples(std::span<const double> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("estimate_from_samples: need at least two samples");
    const double m = static_cast<double>(samples.size());
    const double mean = pairwise_sum(samples) / m;

    std::vector<double> squares(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) squares[i] = samples[i] * samples[i];
    const double second_moment = pairwise_sum(squares) / m;

    const double variance = std::max(second_moment - mean * mean, 0.0);
    const double stat_error = std::sqrt(variance) / std::sqrt(m);

    McEstimate est;
    est.mean = mean;
    est.stat_error = stat_error;
    est.ci_low = mean - 2.0 * stat_error;
    est.ci_high = mean + 2.0 * stat_error;
    est.num_paths = static_cast<std::int64_t>(samples.size());
    return est;
}

namespace {

// Fixed block size so the work partition (and therefore nothing at all about
// the result) depends on the worker count.
constexpr std::int64_t kBlock = 512;

struct RunContext {
    const ModelParams& params;
    const KernelWeights& weights;
    const Payoff& payoff;
    const McConfig& config;
};

void run_block(const RunContext& ctx, std::int64_t begin, std::int64_t end,
               std::vector<double>& values, std::int64_t& faults, VPath& vbuf, XPath& xbuf) {
    const TimeGrid& grid = ctx.weights.grid();
    for (std::int64_t j = begin; j < end; ++j) {
        const IncrementStream stream(ctx.config.master_seed, j, grid);
        double value = 0.0;
        bool ok = true;
        if (ctx.config.scheme == SchemeKind::Volterra) {
            simulate_v_path(ctx.params, ctx.weights, stream, vbuf, ctx.config.options);
            ok = vbuf.finite;
            if (ok) value = evaluate(ctx.payoff, vbuf.s, vbuf.x, grid);
        } else {
            simulate_x_path(ctx.params, ctx.weights, stream, xbuf, ctx.config.options);
            ok = xbuf.finite;
            if (ok) value = evaluate(ctx.payoff, xbuf.s, xbuf.x, grid);
        }
        if (!ok || !std::isfinite(value)) {
            ++faults;
            value = std::numeric_limits<double>::quiet_NaN();
        }
        values[static_cast<std::size_t>(j)] = value;
    }
}

}  // namespace

McEstimate price(const ModelParams& params, const Kernel& kernel, const Payoff& payoff,
                 const McConfig& config) {
    params.validate();
    config.validate();

    const TimeGrid grid = TimeGrid::uniform(config.num_steps, params.horizon);
    const KernelWeights weights(kernel, grid);
    const RunContext ctx{params, weights, payoff, config};

    const std::int64_t m = config.num_paths;
    std::vector<double> values(static_cast<std::size_t>(m));

    int workers = config.workers;
    if (workers == 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc > 0 ? static_cast<int>(hc) : 1;
    }

    const auto start = std::chrono::steady_clock::now();
    std::atomic<std::int64_t> fault_total{0};

    if (workers == 1) {
        std::int64_t faults = 0;
        VPath vbuf;
        XPath xbuf;
        run_block(ctx, 0, m, values, faults, vbuf, xbuf);
        fault_total = faults;
    } else {
        const std::int64_t num_blocks = (m + kBlock - 1) / kBlock;
        std::atomic<std::int64_t> next_block{0};
        auto worker = [&]() {
            std::int64_t faults = 0;
            VPath vbuf;
            XPath xbuf;
            for (;;) {
                const std::int64_t b = next_block.fetch_add(1);
                if (b >= num_blocks) break;
                const std::int64_t begin = b * kBlock;
                const std::int64_t end = std::min(begin + kBlock, m);
                run_block(ctx, begin, end, values, faults, vbuf, xbuf);
            }
            fault_total.fetch_add(faults);
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (fault_total.load() > 0) throw PathFaultError(fault_total.load(), m);

    McEstimate est = estimate_from_samples(values);
    const auto stop = std::chrono::steady_clock::now();
    est.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
    est.fault_count = 0;
    return est;
}

std::vector<TableRow> convergence_table(const ModelParams& params, const Kernel& kernel,
                                        const Payoff& payoff, const std::vector<int>& n_list,
                                        std::int64_t num_paths, std::uint64_t master_seed,
                                        int workers, const SchemeOptions& options) {
    if (n_list.empty()) throw std::invalid_argument("convergence_table: empty n list");
    std::vector<TableRow> rows;
    rows.reserve(2 * n_list.size());
    for (SchemeKind scheme : {SchemeKind::Volterra, SchemeKind::Integrated}) {
        for (int n : n_list) {
            McConfig cfg;
            cfg.num_paths = num_paths;
            cfg.master_seed = master_seed;
            cfg.scheme = scheme;
            cfg.num_steps = n;
            cfg.workers = workers;
            cfg.options = options;
            const McEstimate est = price(params, kernel, payoff, cfg);
            rows.push_back(TableRow{to_string(scheme), n, est.mean, est.stat_error, est.ci_low,
                                    est.ci_high, est.wall_time_seconds});
        }
    }
    return rows;
}

}  // namespace rheston
