#include "obscbf/integrator.hpp"

#include <cmath>
#include <stdexcept>

#include "obscbf/errors.hpp"

namespace obscbf {

namespace {

VectorXd checked_rhs(const OdeProblem& problem, double t, const VectorXd& state) {
    VectorXd d = problem.rhs(t, state);
    if (d.size() != problem.dim) {
        throw std::invalid_argument("rhs returned a vector of the wrong length");
    }
    if (!d.allFinite()) {
        throw IntegrationError(t, state, "non-finite rhs at t = " + std::to_string(t));
    }
    return d;
}

}  // namespace

VectorXd rk4_step(const OdeProblem& problem, double t, const VectorXd& state, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("rk4_step: dt must be positive");
    }
    if (state.size() != problem.dim) {
        throw std::invalid_argument("rk4_step: state length does not match problem dimension");
    }
    if (!state.allFinite()) {
        throw IntegrationError(t, state, "non-finite state at t = " + std::to_string(t));
    }
    const double half = 0.5 * dt;
    const VectorXd k1 = checked_rhs(problem, t, state);
    const VectorXd k2 = checked_rhs(problem, t + half, state + half * k1);
    const VectorXd k3 = checked_rhs(problem, t + half, state + half * k2);
    const VectorXd k4 = checked_rhs(problem, t + dt, state + dt * k3);
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::vector<double> step_grid(double t0, double t_end, double dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("step_grid: dt must be positive");
    }
    if (t_end < t0) {
        throw std::invalid_argument("step_grid: t_end precedes t0");
    }
    const double span = t_end - t0;
    // Absorb round-off so that e.g. 10 / 1e-3 gives exactly 10000 whole steps.
    const double slack = 1e-9;
    const auto whole = static_cast<long long>(std::floor(span / dt + slack));

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(whole) + 2);
    for (long long i = 0; i <= whole; ++i) {
        grid.push_back(t0 + static_cast<double>(i) * dt);
    }
    const double tail = t_end - grid.back();
    if (tail > slack * dt) {
        grid.push_back(t_end);
    } else {
        grid.back() = t_end;
    }
    return grid;
}

VectorXd integrate(const OdeProblem& problem, double t0, const VectorXd& state0, double t_end,
                   double dt, const std::function<void(double, const VectorXd&)>& on_sample) {
    const std::vector<double> grid = step_grid(t0, t_end, dt);
    VectorXd state = state0;
    if (on_sample) on_sample(grid.front(), state);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        state = rk4_step(problem, grid[i - 1], state, grid[i] - grid[i - 1]);
        if (on_sample) on_sample(grid[i], state);
    }
    return state;
}

}  // namespace obscbf
