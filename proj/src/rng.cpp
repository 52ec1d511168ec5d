#include "rheston/rng.hpp"

#include <cmath>

namespace rheston {

namespace {

std::uint64_t path_key(std::uint64_t master_seed, std::int64_t path_index) {
    // Derive a well-separated per-path seed from (master_seed, path_index).
    std::uint64_t x = static_cast<std::uint64_t>(path_index) * 0x9E3779B97F4A7C15ULL;
    const std::uint64_t mixed_index = splitmix64(x);
    std::uint64_t y = master_seed ^ mixed_index;
    return splitmix64(y);
}

}  // namespace

IncrementStream::IncrementStream(std::uint64_t master_seed, std::int64_t path_index,
                                 const TimeGrid& grid)
    : master_seed_(master_seed), path_index_(path_index) {
    const int n = grid.num_steps();
    z_.resize(static_cast<std::size_t>(n));
    z_perp_.resize(static_cast<std::size_t>(n));
    sqrt_step_.resize(static_cast<std::size_t>(n));
    Xoshiro256pp gen(path_key(master_seed, path_index));
    for (int k = 1; k <= n; ++k) {
        // Marsaglia polar method: one exact standard pair per step, and the
        // draw sequence stays a pure function of the (seed, path) key.
        double u, v, s;
        do {
            u = 2.0 * gen.next_unit() - 1.0;
            v = 2.0 * gen.next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        z_[static_cast<std::size_t>(k) - 1] = u * f;
        z_perp_[static_cast<std::size_t>(k) - 1] = v * f;
        sqrt_step_[static_cast<std::size_t>(k) - 1] = std::sqrt(grid.step(k));
    }
}

IncrementStream IncrementStream::with_bias(double z_shift, double z_perp_shift) const {
    IncrementStream out(*this);
    for (auto& v : out.z_) v += z_shift;
    for (auto& v : out.z_perp_) v += z_perp_shift;
    return out;
}

}  // namespace rheston
