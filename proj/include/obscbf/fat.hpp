#pragma once

#include <vector>

#include <Eigen/Dense>

namespace obscbf {

using Eigen::VectorXd;

/// Truncated trigonometric series settings.
struct FatConfig {
    int terms = 3;                   ///< N
    double omega = 1.0;              ///< fundamental frequency [rad/s]
    double truncation_bound = 0.1;   ///< E, bound on the series remainder
};

/// Online estimates theta_hat_i (one n-vector per basis term) and the gains of the
/// adaptive law.
struct AdaptiveState {
    std::vector<VectorXd> theta_hat;
    std::vector<double> theta_bar;
    double epsilon = 0.1;
    double mu = 1.0;
};

/// Throws std::invalid_argument if cfg violates N >= 1, omega > 0, E >= 0.
void validate(const FatConfig& cfg);
/// Throws std::invalid_argument on shape mismatch or non-positive theta_bar / mu,
/// ConfigError on epsilon <= 0.
void validate(const AdaptiveState& state, const FatConfig& cfg, int n);

/// phi_0 = 1, phi_{2k-1} = cos(k omega t), phi_{2k} = sin(k omega t).
double basis(int i, double omega, double t);

/// sum_{i=1..N} theta_hat_i phi_i(t).
VectorXd fat_eval(const AdaptiveState& state, const FatConfig& cfg, double t);

/// d/dt theta_hat_i = -(theta_bar_i^2 / (2 epsilon)) grad phi_i(t) - mu theta_hat_i.
///
/// `grad` is the gradient of the barrier being enforced with respect to xhat.
std::vector<VectorXd> adaptive_rhs(const AdaptiveState& state, const VectorXd& grad,
                                   const FatConfig& cfg, double t);

/// Packs theta_hat_1..theta_hat_N as N*n contiguous reals in index order.
VectorXd pack_theta(const std::vector<VectorXd>& theta);
std::vector<VectorXd> unpack_theta(const Eigen::Ref<const VectorXd>& packed, int terms, int n);

}  // namespace obscbf
