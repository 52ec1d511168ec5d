#pragma once

#include <span>
#include <vector>

namespace rheston {

// Discrete-time partition 0 = t_0 < t_1 < ... < t_n = T together with the
// left-endpoint map eta(s) = t_k for s in [t_k, t_{k+1}), eta(T) = T.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> nodes);

    // Uniform partition with nodes t_k = k*T/n. Each node is computed
    // directly as k*T/n rather than by accumulating steps.
    static TimeGrid uniform(int num_steps, double horizon);

    int num_steps() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
    double horizon() const noexcept { return nodes_.back(); }
    double node(int k) const { return nodes_[static_cast<std::size_t>(k)]; }
    // Step Delta t_k = t_k - t_{k-1}, k = 1..n.
    double step(int k) const { return steps_[static_cast<std::size_t>(k) - 1]; }
    double mesh() const noexcept { return mesh_; }
    bool is_uniform() const noexcept { return uniform_; }

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> steps() const noexcept { return steps_; }

    // Index k of the cell [t_k, t_{k+1}) containing s; returns n for s == T.
    int cell_index(double s) const;
    double eta(double s) const { return nodes_[static_cast<std::size_t>(cell_index(s))]; }

private:
    std::vector<double> nodes_;
    std::vector<double> steps_;
    double mesh_ = 0.0;
    bool uniform_ = false;
};

}  // namespace rheston
