#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "obscbf/dynamics.hpp"
#include "obscbf/fat.hpp"
#include "obscbf/observer.hpp"

namespace obscbf {

using ScalarField = std::function<double(const VectorXd&)>;
using GradientField = std::function<VectorXd(const VectorXd&)>;

/// Relative-degree-1 barrier h with its gradient and a Lipschitz constant L.
struct BarrierRd1 {
    ScalarField h;
    GradientField grad_h;
    double lipschitz = 1.0;
};

/// Lifted chain s_0 = h, s_k = (d/dt + lambda_k) s_{k-1} for a barrier of relative
/// degree r. The chain is supplied by the caller; s.size() == r.
struct BarrierChain {
    std::vector<ScalarField> s;
    std::vector<GradientField> grad_s;
    std::vector<double> lambda;     ///< lambda_1..lambda_{r-1}
    std::vector<double> lipschitz;  ///< L_0..L_{r-1}

    int relative_degree() const noexcept { return static_cast<int>(s.size()); }
};

/// Affine input constraint  a . u + b >= 0.
struct ConstraintCoeffs {
    VectorXd a;
    double b = 0.0;

    double residual(const VectorXd& u) const { return a.dot(u) + b; }
};

/// Throws std::invalid_argument on mismatched list lengths, r < 1 or L <= 0.
void validate(const BarrierChain& chain);

/// Single-element chain equivalent to a relative-degree-1 barrier.
BarrierChain as_chain(const BarrierRd1& barrier);

/// h(xhat) - L M(t).
double h0_eval(const BarrierRd1& barrier, const VectorXd& xhat, double t, const ErrorBoundModel& bound);
/// h0 - epsilon.
double h_eps_eval(const BarrierRd1& barrier, const VectorXd& xhat, double t,
                  const ErrorBoundModel& bound, double epsilon);

double chain_s_eval(const BarrierChain& chain, int k, const VectorXd& x);
/// s_k(xhat) - L_k M(t).
double skm_eval(const BarrierChain& chain, int k, const VectorXd& xhat, double t,
                const ErrorBoundModel& bound);

/// N + sum_i (2 ||theta_hat_i(0)|| / theta_bar_i + ||theta_hat_i(0)||^2 / theta_bar_i^2).
double epsilon_denominator(const AdaptiveState& state0, const FatConfig& cfg);

/// Largest epsilon admitted at the initial estimate. A non-positive value means
/// no epsilon is admissible.
double epsilon_bound_rd1(const BarrierRd1& barrier, const VectorXd& xhat0, const ErrorBoundModel& bound,
                         const AdaptiveState& state0, const FatConfig& cfg);
/// Same, with numerator min_k s_k^M(xhat0, 0).
double epsilon_bound_rdr(const BarrierChain& chain, const VectorXd& xhat0, const ErrorBoundModel& bound,
                         const AdaptiveState& state0, const FatConfig& cfg);

/// Adaptive barrier constraint on u for a relative-degree-1 barrier:
///
///   a = grad_h(xhat)^T g(xhat)
///   b = grad_h . (f(xhat) + fhat(t)) - L dM/dt - ||grad_h|| E + mu h_eps - mu N eps
ConstraintCoeffs constraint_rd1(const BarrierRd1& barrier, const ControlAffineSystem& sys,
                                const VectorXd& xhat, double t, const ErrorBoundModel& bound,
                                const AdaptiveState& state, const FatConfig& cfg);

/// As constraint_rd1 with (h, grad_h, L) replaced by the top of the chain.
ConstraintCoeffs constraint_rdr(const BarrierChain& chain, const ControlAffineSystem& sys,
                                const VectorXd& xhat, double t, const ErrorBoundModel& bound,
                                const AdaptiveState& state, const FatConfig& cfg);

/// Supremum of ||grad(x)|| over uniform samples of the box [lo, hi], inflated.
double estimate_lipschitz(const GradientField& grad, const VectorXd& lo, const VectorXd& hi,
                          int samples = 10000, double inflation = 1.05, std::uint64_t seed = 0);

}  // namespace obscbf
