#pragma once

#include <span>
#include <string>

#include "rheston/grid.hpp"

namespace rheston {

// The five instruments priced in the experiments. A variance call is struck
// at the initial variance level; that strike is resolved when the payoff is
// built so evaluation stays uniform.
struct Payoff {
    enum class Type { EuropeanCall, AsianCall, LookbackCall, VarianceSwap, VarianceCall };

    Type type = Type::EuropeanCall;
    double strike = 0.0;

    static Payoff european_call(double strike);
    static Payoff asian_call(double strike);
    static Payoff lookback_call(double strike);
    static Payoff variance_swap();
    static Payoff variance_call(double initial_variance);

    std::string name() const;
};

// Evaluate on node arrays (n+1 values each):
//   EuropeanCall  (S_n - K)+
//   AsianCall     (A - K)+   with A = (T/n) * sum_{k=1..n} S_k
//   LookbackCall  (max_{0<=k<=n} S_k - K)+
//   VarianceSwap  X_n
//   VarianceCall  (X_n - K)+
double evaluate(const Payoff& payoff, std::span<const double> s, std::span<const double> x,
                const TimeGrid& grid);

}  // namespace rheston
