#pragma once

#include <functional>

#include <Eigen/Dense>

namespace obscbf {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Control-affine plant  xdot = f(x) + g(x) u,  y = l(x).
///
/// The callables must be pure; a system is immutable once built and may be
/// shared between threads.
struct ControlAffineSystem {
    int n = 0;  ///< state dimension
    int m = 0;  ///< input dimension
    int k = 0;  ///< output dimension
    std::function<VectorXd(const VectorXd&)> drift;
    std::function<MatrixXd(const VectorXd&)> input_map;
    std::function<VectorXd(const VectorXd&)> output_map;
};

VectorXd eval_drift(const ControlAffineSystem& sys, const VectorXd& x);
MatrixXd eval_input_matrix(const ControlAffineSystem& sys, const VectorXd& x);
VectorXd eval_output(const ControlAffineSystem& sys, const VectorXd& x);

/// xdot = A x + B u, y = C x.
ControlAffineSystem make_linear_system(const MatrixXd& A, const MatrixXd& B, const MatrixXd& C);

/// Three-state linear plant used for the relative-degree-1 and -2 demonstrations.
ControlAffineSystem make_example1_system();

/// Rossler attractor with identity input map and output y = x1.
ControlAffineSystem make_rossler_system(double a, double b, double c);

namespace example1 {
MatrixXd state_matrix();
MatrixXd input_matrix();
MatrixXd output_matrix();
/// Output-injection gain L for this plant. It stabilises A + L C, not A - L C.
VectorXd injection_gain();
}  // namespace example1

}  // namespace obscbf
