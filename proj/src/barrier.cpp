#include "obscbf/barrier.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace obscbf {

namespace {

void check_index(const BarrierChain& chain, int k) {
    if (k < 0 || k >= chain.relative_degree()) {
        throw std::invalid_argument("chain index " + std::to_string(k) + " outside [0, " +
                                    std::to_string(chain.relative_degree() - 1) + "]");
    }
}

// Shared assembly of the adaptive barrier row for a function `value` with
// gradient `grad` at xhat and Lipschitz constant `lipschitz`.
ConstraintCoeffs assemble(double value, const VectorXd& grad, double lipschitz,
                          const ControlAffineSystem& sys, const VectorXd& xhat, double t,
                          const ErrorBoundModel& bound, const AdaptiveState& state,
                          const FatConfig& cfg) {
    const double eps = state.epsilon;
    const double mu = state.mu;
    const double barrier_eps = value - lipschitz * bound.value(t) - eps;
    const VectorXd drift = eval_drift(sys, xhat) + fat_eval(state, cfg, t);

    ConstraintCoeffs c;
    c.a = eval_input_matrix(sys, xhat).transpose() * grad;
    c.b = grad.dot(drift) - lipschitz * bound.derivative(t) - grad.norm() * cfg.truncation_bound +
          mu * barrier_eps - mu * cfg.terms * eps;
    return c;
}

}  // namespace

void validate(const BarrierChain& chain) {
    const int r = chain.relative_degree();
    if (r < 1) throw std::invalid_argument("BarrierChain: empty chain");
    if (static_cast<int>(chain.grad_s.size()) != r || static_cast<int>(chain.lipschitz.size()) != r) {
        throw std::invalid_argument("BarrierChain: s, grad_s and lipschitz must have r entries");
    }
    if (static_cast<int>(chain.lambda.size()) != r - 1) {
        throw std::invalid_argument("BarrierChain: lambda must have r - 1 entries");
    }
    for (double L : chain.lipschitz) {
        if (!(L > 0.0)) throw std::invalid_argument("BarrierChain: Lipschitz constants must be positive");
    }
    for (double l : chain.lambda) {
        if (!(l > 0.0)) throw std::invalid_argument("BarrierChain: lambda_k must be positive");
    }
}

BarrierChain as_chain(const BarrierRd1& barrier) {
    BarrierChain chain;
    chain.s = {barrier.h};
    chain.grad_s = {barrier.grad_h};
    chain.lipschitz = {barrier.lipschitz};
    return chain;
}

double h0_eval(const BarrierRd1& barrier, const VectorXd& xhat, double t, const ErrorBoundModel& bound) {
    return barrier.h(xhat) - barrier.lipschitz * error_bound(bound, t);
}

double h_eps_eval(const BarrierRd1& barrier, const VectorXd& xhat, double t,
                  const ErrorBoundModel& bound, double epsilon) {
    return h0_eval(barrier, xhat, t, bound) - epsilon;
}

double chain_s_eval(const BarrierChain& chain, int k, const VectorXd& x) {
    check_index(chain, k);
    return chain.s[static_cast<std::size_t>(k)](x);
}

double skm_eval(const BarrierChain& chain, int k, const VectorXd& xhat, double t,
                const ErrorBoundModel& bound) {
    check_index(chain, k);
    return chain.s[static_cast<std::size_t>(k)](xhat) -
           chain.lipschitz[static_cast<std::size_t>(k)] * error_bound(bound, t);
}

double epsilon_denominator(const AdaptiveState& state0, const FatConfig& cfg) {
    double denom = cfg.terms;
    for (std::size_t i = 0; i < state0.theta_hat.size(); ++i) {
        const double ratio = state0.theta_hat[i].norm() / state0.theta_bar[i];
        denom += 2.0 * ratio + ratio * ratio;
    }
    return denom;
}

double epsilon_bound_rd1(const BarrierRd1& barrier, const VectorXd& xhat0, const ErrorBoundModel& bound,
                         const AdaptiveState& state0, const FatConfig& cfg) {
    return h0_eval(barrier, xhat0, 0.0, bound) / epsilon_denominator(state0, cfg);
}

double epsilon_bound_rdr(const BarrierChain& chain, const VectorXd& xhat0, const ErrorBoundModel& bound,
                         const AdaptiveState& state0, const FatConfig& cfg) {
    validate(chain);
    double lowest = skm_eval(chain, 0, xhat0, 0.0, bound);
    for (int k = 1; k < chain.relative_degree(); ++k) {
        lowest = std::min(lowest, skm_eval(chain, k, xhat0, 0.0, bound));
    }
    return lowest / epsilon_denominator(state0, cfg);
}

ConstraintCoeffs constraint_rd1(const BarrierRd1& barrier, const ControlAffineSystem& sys,
                                const VectorXd& xhat, double t, const ErrorBoundModel& bound,
                                const AdaptiveState& state, const FatConfig& cfg) {
    return assemble(barrier.h(xhat), barrier.grad_h(xhat), barrier.lipschitz, sys, xhat, t, bound,
                    state, cfg);
}

ConstraintCoeffs constraint_rdr(const BarrierChain& chain, const ControlAffineSystem& sys,
                                const VectorXd& xhat, double t, const ErrorBoundModel& bound,
                                const AdaptiveState& state, const FatConfig& cfg) {
    validate(chain);
    const auto top = static_cast<std::size_t>(chain.relative_degree() - 1);
    return assemble(chain.s[top](xhat), chain.grad_s[top](xhat), chain.lipschitz[top], sys, xhat, t,
                    bound, state, cfg);
}

double estimate_lipschitz(const GradientField& grad, const VectorXd& lo, const VectorXd& hi,
                          int samples, double inflation, std::uint64_t seed) {
    if (lo.size() != hi.size() || (hi.array() < lo.array()).any()) {
        throw std::invalid_argument("estimate_lipschitz: invalid operating box");
    }
    if (samples < 1) throw std::invalid_argument("estimate_lipschitz: need at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double sup = 0.0;
    VectorXd x(lo.size());
    for (int s = 0; s < samples; ++s) {
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            x(i) = lo(i) + (hi(i) - lo(i)) * unit(rng);
        }
        sup = std::max(sup, grad(x).norm());
    }
    return inflation * sup;
}

}  // namespace obscbf
