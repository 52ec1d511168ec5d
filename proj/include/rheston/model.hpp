#pragma once

namespace rheston {

// Parameter set of the model. All fields are validated at construction:
// s0, v0, theta, lambda, nu strictly positive, rho in [-1, 1], horizon > 0.
struct ModelParams {
    double s0 = 1.0;
    double v0 = 0.02;
    double theta = 0.02;
    double lambda = 0.3;
    double nu = 0.3;
    double rho = -0.7;
    double horizon = 1.0;

    void validate() const;
};

ModelParams make_params(double s0, double v0, double theta, double lambda, double nu, double rho,
                        double horizon);

}  // namespace rheston
