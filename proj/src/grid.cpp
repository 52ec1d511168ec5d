#include "rheston/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rheston {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw std::invalid_argument("TimeGrid: need at least one step");
    if (nodes_.front() != 0.0) throw std::invalid_argument("TimeGrid: t_0 must be 0");
    steps_.resize(nodes_.size() - 1);
    for (std::size_t k = 1; k < nodes_.size(); ++k) {
        const double dt = nodes_[k] - nodes_[k - 1];
        if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: nodes must be strictly increasing");
        steps_[k - 1] = dt;
        mesh_ = std::max(mesh_, dt);
    }
    const double min_step = *std::min_element(steps_.begin(), steps_.end());
    uniform_ = (mesh_ - min_step) <= 1e-12 * mesh_;
}

TimeGrid TimeGrid::uniform(int num_steps, double horizon) {
    if (num_steps < 1) throw std::invalid_argument("TimeGrid: num_steps must be >= 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be positive");
    std::vector<double> nodes(static_cast<std::size_t>(num_steps) + 1);
    for (int k = 0; k <= num_steps; ++k)
        nodes[static_cast<std::size_t>(k)] = static_cast<double>(k) * horizon / num_steps;
    nodes.back() = horizon;
    return TimeGrid(std::move(nodes));
}

int TimeGrid::cell_index(double s) const {
    if (s < 0.0 || s > horizon()) throw std::out_of_range("TimeGrid::cell_index: s outside [0, T]");
    if (s == horizon()) return num_steps();
    if (uniform_) {
        const int k = static_cast<int>(std::floor(s / steps_[0]));
        // guard against roundoff landing one cell off
        const int kk = std::clamp(k, 0, num_steps() - 1);
        if (s < nodes_[static_cast<std::size_t>(kk)]) return kk - 1;
        if (s >= nodes_[static_cast<std::size_t>(kk) + 1]) return kk + 1;
        return kk;
    }
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s);
    return static_cast<int>(it - nodes_.begin()) - 1;
}

}  // namespace rheston
