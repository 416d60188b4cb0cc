#include <random>

#include <doctest.h>

#include "obscbf/dynamics.hpp"
#include "oracles.hpp"

using namespace obscbf;

namespace {

VectorXd v3(double a, double b, double c) {
    VectorXd v(3);
    v << a, b, c;
    return v;
}

}  // namespace

TEST_CASE("example 1 drift is A x") {
    const auto sys = make_example1_system();
    CHECK(sys.n == 3);
    CHECK(sys.m == 1);
    CHECK(sys.k == 1);
    CHECK(eval_drift(sys, v3(0, 0, 0)).isZero());
    // [-2 + 4.4 - 4, -2.2 + 2, 2 - 2]
    CHECK((eval_drift(sys, v3(2, 2.2, 2)) - v3(-1.6, -0.2, 0)).norm() < 1e-12);
    CHECK((eval_drift(sys, v3(1, 0, 0)) - v3(-1, 0, 1)).norm() < 1e-15);
}

TEST_CASE("example 1 input and output maps") {
    const auto sys = make_example1_system();
    const MatrixXd g = eval_input_matrix(sys, v3(5, -1, 2));
    REQUIRE(g.rows() == 3);
    REQUIRE(g.cols() == 1);
    CHECK((g.col(0) - v3(0, 1, 1)).norm() == 0.0);
    CHECK(eval_output(sys, v3(2, 2.2, 2))(0) == doctest::Approx(4.2).epsilon(1e-14));
    CHECK(eval_output(sys, v3(0, 0, 5))(0) == 0.0);
    CHECK(eval_output(sys, v3(1, 1, 0))(0) == 2.0);
}

TEST_CASE("rossler preset") {
    const auto sys = make_rossler_system(0.2, 0.2, 5.0);
    CHECK(sys.n == 3);
    CHECK(sys.m == 3);
    CHECK(sys.k == 1);
    CHECK((eval_drift(sys, v3(0, 0, 0)) - v3(0, 0, 0.2)).norm() < 1e-15);
    CHECK((eval_drift(sys, v3(5, 0, 1)) - v3(-1, 5, 0.2)).norm() < 1e-15);
    CHECK(eval_drift(make_rossler_system(0.2, 0.0, 5.0), v3(0, 0, 0)).isZero());
    CHECK(eval_input_matrix(sys, v3(1, 2, 3)).isIdentity());
    CHECK(eval_output(sys, v3(1, 2, 3))(0) == 1.0);
}

TEST_CASE("zero input map system") {
    ControlAffineSystem sys;
    sys.n = 2;
    sys.m = 3;
    sys.k = 1;
    sys.drift = [](const VectorXd& x) -> VectorXd { return -x; };
    sys.input_map = [](const VectorXd&) -> MatrixXd { return MatrixXd::Zero(2, 3); };
    sys.output_map = [](const VectorXd& x) -> VectorXd { return x.head(1); };
    const MatrixXd g = eval_input_matrix(sys, VectorXd::Ones(2));
    CHECK(g.rows() == 2);
    CHECK(g.cols() == 3);
    CHECK(g.isZero());
}

TEST_CASE("dimension mismatch is an argument error") {
    const auto sys = make_example1_system();
    CHECK_THROWS_AS(eval_drift(sys, VectorXd::Zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(eval_input_matrix(sys, VectorXd::Zero(4)), std::invalid_argument);
    CHECK_THROWS_AS(eval_output(sys, VectorXd::Zero(0)), std::invalid_argument);
}

TEST_CASE("example 1 drift is linear") {
    const auto sys = make_example1_system();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const VectorXd x = oracle::random_vector(rng, 3, -10, 10);
        const VectorXd z = oracle::random_vector(rng, 3, -10, 10);
        const double alpha = coef(rng), beta = coef(rng);
        const VectorXd lhs = eval_drift(sys, alpha * x + beta * z);
        const VectorXd rhs = alpha * eval_drift(sys, x) + beta * eval_drift(sys, z);
        CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }
}

TEST_CASE("preset input maps are state independent") {
    std::mt19937_64 rng(11);
    for (const auto& sys : {make_example1_system(), make_rossler_system(0.2, 0.2, 5.0)}) {
        const MatrixXd ref = eval_input_matrix(sys, VectorXd::Zero(3));
        for (int i = 0; i < 100; ++i) {
            CHECK(eval_input_matrix(sys, oracle::random_vector(rng, 3, -50, 50)) == ref);
        }
    }
}
