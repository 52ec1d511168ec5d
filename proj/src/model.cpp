#include "rheston/model.hpp"

#include <stdexcept>

namespace rheston {

void ModelParams::validate() const {
    if (!(s0 > 0.0)) throw std::invalid_argument("ModelParams: s0 must be positive");
    if (!(v0 >= 0.0)) throw std::invalid_argument("ModelParams: v0 must be nonnegative");
    if (!(theta >= 0.0)) throw std::invalid_argument("ModelParams: theta must be nonnegative");
    if (!(lambda >= 0.0)) throw std::invalid_argument("ModelParams: lambda must be nonnegative");
    if (!(nu >= 0.0)) throw std::invalid_argument("ModelParams: nu must be nonnegative");
    if (!(rho >= -1.0 && rho <= 1.0)) throw std::invalid_argument("ModelParams: rho must be in [-1, 1]");
    if (!(horizon > 0.0)) throw std::invalid_argument("ModelParams: horizon must be positive");
}

ModelParams make_params(double s0, double v0, double theta, double lambda, double nu, double rho,
                        double horizon) {
    ModelParams p{s0, v0, theta, lambda, nu, rho, horizon};
    p.validate();
    return p;
}

}  // namespace rheston
