#include "obscbf/fat.hpp"

#include <cmath>
#include <stdexcept>

#include "obscbf/errors.hpp"

namespace obscbf {

void validate(const FatConfig& cfg) {
    if (cfg.terms < 1) throw std::invalid_argument("FatConfig: N must be at least 1");
    if (!(cfg.omega > 0.0)) throw std::invalid_argument("FatConfig: omega must be positive");
    if (!(cfg.truncation_bound >= 0.0)) throw std::invalid_argument("FatConfig: E must be non-negative");
}

void validate(const AdaptiveState& state, const FatConfig& cfg, int n) {
    validate(cfg);
    const auto terms = static_cast<std::size_t>(cfg.terms);
    if (state.theta_hat.size() != terms || state.theta_bar.size() != terms) {
        throw std::invalid_argument("AdaptiveState: expected N parameter vectors and N bounds");
    }
    for (const auto& th : state.theta_hat) {
        if (th.size() != n) throw std::invalid_argument("AdaptiveState: parameter vector length != n");
    }
    for (double tb : state.theta_bar) {
        if (!(tb > 0.0)) throw std::invalid_argument("AdaptiveState: theta_bar must be positive");
    }
    if (!(state.epsilon > 0.0)) throw ConfigError("AdaptiveState: epsilon must be positive");
    if (!(state.mu > 0.0)) throw std::invalid_argument("AdaptiveState: mu must be positive");
}

double basis(int i, double omega, double t) {
    if (i < 0) throw std::invalid_argument("basis: index must be non-negative");
    if (i == 0) return 1.0;
    const int k = (i + 1) / 2;
    const double arg = k * omega * t;
    return (i % 2 == 1) ? std::cos(arg) : std::sin(arg);
}

VectorXd fat_eval(const AdaptiveState& state, const FatConfig& cfg, double t) {
    if (state.theta_hat.size() != static_cast<std::size_t>(cfg.terms) || state.theta_hat.empty()) {
        throw std::invalid_argument("fat_eval: expected N parameter vectors");
    }
    VectorXd sum = VectorXd::Zero(state.theta_hat.front().size());
    for (int i = 1; i <= cfg.terms; ++i) {
        sum += state.theta_hat[i - 1] * basis(i, cfg.omega, t);
    }
    return sum;
}

std::vector<VectorXd> adaptive_rhs(const AdaptiveState& state, const VectorXd& grad,
                                   const FatConfig& cfg, double t) {
    if (state.epsilon == 0.0) {
        throw ConfigError("adaptive_rhs: epsilon must be non-zero");
    }
    if (state.theta_hat.size() != static_cast<std::size_t>(cfg.terms) ||
        state.theta_bar.size() != state.theta_hat.size()) {
        throw std::invalid_argument("adaptive_rhs: expected N parameter vectors and bounds");
    }
    std::vector<VectorXd> rates;
    rates.reserve(state.theta_hat.size());
    for (int i = 1; i <= cfg.terms; ++i) {
        const double tb = state.theta_bar[i - 1];
        const double gain = tb * tb / (2.0 * state.epsilon) * basis(i, cfg.omega, t);
        rates.push_back(-gain * grad - state.mu * state.theta_hat[i - 1]);
    }
    return rates;
}

VectorXd pack_theta(const std::vector<VectorXd>& theta) {
    if (theta.empty()) return {};
    const auto n = theta.front().size();
    VectorXd packed(static_cast<Eigen::Index>(theta.size()) * n);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        packed.segment(static_cast<Eigen::Index>(i) * n, n) = theta[i];
    }
    return packed;
}

std::vector<VectorXd> unpack_theta(const Eigen::Ref<const VectorXd>& packed, int terms, int n) {
    if (packed.size() != static_cast<Eigen::Index>(terms) * n) {
        throw std::invalid_argument("unpack_theta: packed length != N * n");
    }
    std::vector<VectorXd> theta;
    theta.reserve(static_cast<std::size_t>(terms));
    for (int i = 0; i < terms; ++i) {
        theta.emplace_back(packed.segment(static_cast<Eigen::Index>(i) * n, n));
    }
    return theta;
}

}  // namespace obscbf
