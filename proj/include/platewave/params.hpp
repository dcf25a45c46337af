#pragma once

#include <stdexcept>
#include <string>

namespace platewave {

/// Coefficients of the coupled plate/wave system: stiffness alpha, coupling
/// gamma, damping strength delta, rotational inertia kappa, and the two
/// fractional exponents theta (damping) and beta (inertia).
struct SystemParams {
    double alpha;
    double gamma;
    double delta;
    double kappa;
    double theta;
    double beta;

    SystemParams(double alpha_, double gamma_, double delta_, double kappa_,
                 double theta_, double beta_)
        : alpha(alpha_), gamma(gamma_), delta(delta_), kappa(kappa_),
          theta(theta_), beta(beta_) {
        if (!(alpha > 0.0))
            throw std::invalid_argument("alpha must be positive, got " +
                                        std::to_string(alpha));
        if (gamma == 0.0)
            throw std::invalid_argument("gamma must be nonzero");
        if (!(delta >= 0.0))
            throw std::invalid_argument("delta must be nonnegative, got " +
                                        std::to_string(delta));
        if (!(kappa > 0.0))
            throw std::invalid_argument("kappa must be positive, got " +
                                        std::to_string(kappa));
        if (!(theta >= 0.0 && theta <= 1.0))
            throw std::invalid_argument("theta must lie in [0,1], got " +
                                        std::to_string(theta));
        if (!(beta > 0.0 && beta <= 1.0))
            throw std::invalid_argument("beta must lie in (0,1], got " +
                                        std::to_string(beta));
    }
};

} // namespace platewave
