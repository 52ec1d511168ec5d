#pragma once

#include <cstdint>
#include <vector>

#include "rheston/grid.hpp"

namespace rheston {

// splitmix64 step; also used as a seeding mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman/Vigna). State seeded through splitmix64.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on (0, 1]
    double next_open_unit() noexcept {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }
    // uniform on [0, 1)
    double next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

// The Gaussian increments driving one simulated path. Fully determined by
// (master_seed, path_index, grid): regeneration is bit-identical, and the
// stream for path j is built from an independently keyed generator so the
// Monte-Carlo result does not depend on how paths are scheduled over workers.
//
// Per step k = 1..n the stream holds an independent standard pair
// (Z_k, Z'_k); dw(k) scales by sqrt(Delta t_k).
class IncrementStream {
public:
    IncrementStream(std::uint64_t master_seed, std::int64_t path_index, const TimeGrid& grid);

    int num_steps() const noexcept { return static_cast<int>(z_.size()); }

    double z(int k) const { return z_[static_cast<std::size_t>(k) - 1]; }
    double z_perp(int k) const { return z_perp_[static_cast<std::size_t>(k) - 1]; }
    double dw(int k) const { return z(k) * sqrt_step_[static_cast<std::size_t>(k) - 1]; }
    double dw_perp(int k) const { return z_perp(k) * sqrt_step_[static_cast<std::size_t>(k) - 1]; }

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::int64_t path_index() const noexcept { return path_index_; }

    // Diagnostics hook: a copy with every Z (resp. Z') shifted by a constant.
    // Used by the negative-control martingale check; never by pricing runs.
    IncrementStream with_bias(double z_shift, double z_perp_shift) const;

private:
    IncrementStream() = default;
    std::uint64_t master_seed_ = 0;
    std::int64_t path_index_ = 0;
    std::vector<double> z_, z_perp_, sqrt_step_;
};

}  // namespace rheston
