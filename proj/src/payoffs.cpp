#include "rheston/payoffs.hpp"

#include <algorithm>
#include <stdexcept>

namespace rheston {

namespace {

Payoff make(Payoff::Type type, double strike) {
    if (strike < 0.0) throw std::invalid_argument("Payoff: strike must be nonnegative");
    return Payoff{type, strike};
}

}  // namespace

Payoff Payoff::european_call(double strike) { return make(Type::EuropeanCall, strike); }
Payoff Payoff::asian_call(double strike) { return make(Type::AsianCall, strike); }
Payoff Payoff::lookback_call(double strike) { return make(Type::LookbackCall, strike); }
Payoff Payoff::variance_swap() { return Payoff{Type::VarianceSwap, 0.0}; }
Payoff Payoff::variance_call(double initial_variance) {
    return make(Type::VarianceCall, initial_variance);
}

std::string Payoff::name() const {
    switch (type) {
        case Type::EuropeanCall: return "european_call";
        case Type::AsianCall: return "asian_call";
        case Type::LookbackCall: return "lookback_call";
        case Type::VarianceSwap: return "variance_swap";
        case Type::VarianceCall: return "variance_call";
    }
    return "unknown";
}

double evaluate(const Payoff& payoff, std::span<const double> s, std::span<const double> x,
                const TimeGrid& grid) {
    const std::size_t n = static_cast<std::size_t>(grid.num_steps());
    switch (payoff.type) {
        case Payoff::Type::EuropeanCall:
            return std::max(s[n] - payoff.strike, 0.0);
        case Payoff::Type::AsianCall: {
            double acc = 0.0;
            for (std::size_t k = 1; k <= n; ++k) acc += s[k];
            const double avg = grid.horizon() / static_cast<double>(n) * acc;
            return std::max(avg - payoff.strike, 0.0);
        }
        case Payoff::Type::LookbackCall: {
            double peak = s[0];
            for (std::size_t k = 1; k <= n; ++k) peak = std::max(peak, s[k]);
            return std::max(peak - payoff.strike, 0.0);
        }
        case Payoff::Type::VarianceSwap:
            return x[n];
        case Payoff::Type::VarianceCall:
            return std::max(x[n] - payoff.strike, 0.0);
    }
    throw std::logic_error("Payoff: unknown type");
}

}  // namespace rheston
