#include "obscbf/dynamics.hpp"

#include <stdexcept>
#include <string>

namespace obscbf {

namespace {

void check_state(const ControlAffineSystem& sys, const VectorXd& x) {
    if (x.size() != sys.n) {
        throw std::invalid_argument("state has length " + std::to_string(x.size()) + ", expected " +
                                    std::to_string(sys.n));
    }
}

}  // namespace

VectorXd eval_drift(const ControlAffineSystem& sys, const VectorXd& x) {
    check_state(sys, x);
    return sys.drift(x);
}

MatrixXd eval_input_matrix(const ControlAffineSystem& sys, const VectorXd& x) {
    check_state(sys, x);
    return sys.input_map(x);
}

VectorXd eval_output(const ControlAffineSystem& sys, const VectorXd& x) {
    check_state(sys, x);
    return sys.output_map(x);
}

ControlAffineSystem make_linear_system(const MatrixXd& A, const MatrixXd& B, const MatrixXd& C) {
    if (A.rows() != A.cols() || B.rows() != A.rows() || C.cols() != A.rows()) {
        throw std::invalid_argument("make_linear_system: inconsistent A, B, C shapes");
    }
    ControlAffineSystem sys;
    sys.n = static_cast<int>(A.rows());
    sys.m = static_cast<int>(B.cols());
    sys.k = static_cast<int>(C.rows());
    sys.drift = [A](const VectorXd& x) -> VectorXd { return A * x; };
    sys.input_map = [B](const VectorXd&) -> MatrixXd { return B; };
    sys.output_map = [C](const VectorXd& x) -> VectorXd { return C * x; };
    return sys;
}

namespace example1 {

MatrixXd state_matrix() {
    MatrixXd A(3, 3);
    A << -1, 2, -2,
          0, -1, 1,
          1, 0, -1;
    return A;
}

MatrixXd input_matrix() {
    MatrixXd B(3, 1);
    B << 0, 1, 1;
    return B;
}

MatrixXd output_matrix() {
    MatrixXd C(1, 3);
    C << 1, 1, 0;
    return C;
}

VectorXd injection_gain() {
    VectorXd L(3);
    L << -2.23029, 0.190287, 0.232326;
    return L;
}

}  // namespace example1

ControlAffineSystem make_example1_system() {
    return make_linear_system(example1::state_matrix(), example1::input_matrix(),
                              example1::output_matrix());
}

ControlAffineSystem make_rossler_system(double a, double b, double c) {
    ControlAffineSystem sys;
    sys.n = 3;
    sys.m = 3;
    sys.k = 1;
    sys.drift = [a, b, c](const VectorXd& x) -> VectorXd {
        VectorXd dx(3);
        dx << -x(1) - x(2),
              x(0) + a * x(1),
              b + x(2) * (x(0) - c);
        return dx;
    };
    sys.input_map = [](const VectorXd&) -> MatrixXd { return MatrixXd::Identity(3, 3); };
    sys.output_map = [](const VectorXd& x) -> VectorXd { return x.head(1); };
    return sys;
}

}  // namespace obscbf
