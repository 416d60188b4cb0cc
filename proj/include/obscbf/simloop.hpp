#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "obscbf/barrier.hpp"
#include "obscbf/dynamics.hpp"
#include "obscbf/fat.hpp"
#include "obscbf/observer.hpp"

namespace obscbf {

enum class Controller { proposed, baseline };

/// What to apply when the constraint admits no input (a = 0, b < 0).
enum class InfeasiblePolicy { apply_nominal, hold_last_feasible };

using Barrier = std::variant<BarrierRd1, BarrierChain>;

struct InputBox {
    VectorXd lo;
    VectorXd hi;
};

struct SimConfig {
    ControlAffineSystem system;
    EeqObserver observer;
    Barrier barrier;
    FatConfig fat;
    AdaptiveState adaptive0;
    VectorXd x0;
    VectorXd xhat0;
    std::function<VectorXd(double t, const VectorXd& xhat)> u_nominal;
    double t_end = 10.0;
    double dt = 1e-3;
    Controller controller = Controller::proposed;
    double baseline_gamma = 1.0;
    bool strict_feasibility = false;
    InfeasiblePolicy infeasible_policy = InfeasiblePolicy::apply_nominal;
    std::optional<InputBox> input_box;  ///< off by default
};

struct SimSample {
    double t = 0.0;
    VectorXd x;
    VectorXd xhat;
    VectorXd u;
    double h_true = 0.0;       ///< h(x), or s_0(x) for a chain
    double h0 = 0.0;           ///< h(xhat) - L M(t)
    double barrier_eps = 0.0;  ///< h_eps, or s_eps for a chain
    double residual = 0.0;     ///< a . u + b of the constraint that produced u
    double M = 0.0;
    std::vector<double> theta_norms;
    bool qp_active = false;
    bool qp_feasible = true;
};

struct SimTrace {
    int n = 0;
    int m = 0;
    int terms = 0;
    std::vector<SimSample> samples;
};

struct SafetyReport {
    double min_h_true = 0.0;
    double min_h0 = 0.0;
    std::optional<double> first_violation_t;
    int bound_violations = 0;
    int infeasible_steps = 0;
    double epsilon_bound = 0.0;
    double epsilon_used = 0.0;
    bool epsilon_ok = false;
};

/// The closed loop diverged. `last_sample()` is the last finite sample.
class RunError : public std::runtime_error {
public:
    RunError(const std::string& what, SimSample last)
        : std::runtime_error(what), last_(std::move(last)) {}

    const SimSample& last_sample() const noexcept { return last_; }

private:
    SimSample last_;
};

/// Throws ConfigError / std::invalid_argument on inconsistent configs.
void validate(const SimConfig& cfg);

/// Epsilon admitted by the initial data for the configured barrier type.
double epsilon_bound(const SimConfig& cfg);

/// Runs the sampled-data closed loop. The augmented state is
/// [x; xhat; theta_hat_1..theta_hat_N]; u is recomputed at the start of every
/// step and held across it.
SimTrace run_simulation(const SimConfig& cfg);

SafetyReport safety_report(const SimTrace& trace, const SimConfig& cfg);

/// Proposed and baseline controllers from the same initial data. The two runs
/// execute concurrently.
std::pair<SimTrace, SimTrace> run_pair(const SimConfig& cfg);

}  // namespace obscbf
