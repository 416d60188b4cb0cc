#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace obscbf {

using Eigen::VectorXd;

struct OdeProblem {
    int dim = 0;
    std::function<VectorXd(double t, const VectorXd& state)> rhs;
};

/// One classical RK4 step. Throws IntegrationError if any stage is non-finite.
VectorXd rk4_step(const OdeProblem& problem, double t, const VectorXd& state, double dt);

/// Sample times t0, t0+dt, ..., t_end. The last interval is shortened so the
/// grid ends exactly at t_end. A degenerate interval yields {t0}.
std::vector<double> step_grid(double t0, double t_end, double dt);

/// Integrates over step_grid(t0, t_end, dt), calling on_sample at every grid
/// point (including both ends). Returns the state at t_end.
VectorXd integrate(const OdeProblem& problem, double t0, const VectorXd& state0, double t_end,
                   double dt,
                   const std::function<void(double, const VectorXd&)>& on_sample = {});

}  // namespace obscbf
