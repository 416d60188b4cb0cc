#include <cmath>
#include <numbers>

#include <doctest.h>

#include "obscbf/errors.hpp"
#include "obscbf/fat.hpp"
#include "obscbf/integrator.hpp"
#include "oracles.hpp"

using namespace obscbf;

namespace {

constexpr double pi = std::numbers::pi;

AdaptiveState make_state(std::vector<VectorXd> theta, double theta_bar, double eps, double mu) {
    AdaptiveState s;
    s.theta_bar.assign(theta.size(), theta_bar);
    s.theta_hat = std::move(theta);
    s.epsilon = eps;
    s.mu = mu;
    return s;
}

VectorXd v(std::initializer_list<double> xs) {
    VectorXd out(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) out(i++) = x;
    return out;
}

}  // namespace

TEST_CASE("basis") {
    CHECK(basis(0, 1.0, 0.0) == 1.0);
    CHECK(basis(0, 3.0, 17.2) == 1.0);
    CHECK(basis(1, 1.0, 0.0) == 1.0);
    CHECK(basis(2, 1.0, 0.0) == 0.0);
    CHECK(basis(3, 1.0, pi) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(basis(4, 2.0, 0.3) == doctest::Approx(std::sin(2 * 2.0 * 0.3)).epsilon(1e-15));
    CHECK(basis(5, 0.5, 1.1) == doctest::Approx(std::cos(3 * 0.5 * 1.1)).epsilon(1e-15));
    CHECK_THROWS_AS(basis(-1, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("fat_eval") {
    FatConfig cfg;
    cfg.terms = 3;
    const auto zero = make_state({VectorXd::Zero(3), VectorXd::Zero(3), VectorXd::Zero(3)}, 0.5, 0.1, 1.0);
    CHECK(fat_eval(zero, cfg, 1.3).isZero());

    cfg.terms = 1;
    CHECK(fat_eval(make_state({v({2, 0})}, 0.5, 0.1, 1.0), cfg, 0.0) == v({2, 0}));

    cfg.terms = 2;
    const VectorXd got = fat_eval(make_state({v({1}), v({1})}, 0.5, 0.1, 1.0), cfg, pi / 2);
    CHECK(got(0) == doctest::Approx(std::cos(pi / 2) + std::sin(pi / 2)).epsilon(1e-15));

    CHECK_THROWS_AS(fat_eval(make_state({v({1})}, 0.5, 0.1, 1.0), cfg, 0.0), std::invalid_argument);
}

TEST_CASE("adaptive law examples") {
    FatConfig cfg;
    cfg.terms = 1;
    const auto rest = make_state({VectorXd::Zero(3)}, 0.5, 0.1, 3.5);
    CHECK(adaptive_rhs(rest, VectorXd::Zero(3), cfg, 0.7)[0].isZero());

    const auto d = adaptive_rhs(rest, v({0, 1, 0}), cfg, 0.0);
    CHECK(d.size() == 1);
    CHECK((d[0] - v({0, -1.25, 0})).norm() < 1e-15);

    const auto leak = adaptive_rhs(make_state({v({1, 1})}, 0.5, 0.1, 2.0), VectorXd::Zero(2), cfg, 0.0);
    CHECK(leak[0] == v({-2, -2}));
}

TEST_CASE("adaptive law matches a hand-written oracle for N = 3") {
    FatConfig cfg;
    cfg.terms = 3;
    cfg.omega = 1.7;
    AdaptiveState s = make_state({v({0.1, -0.2}), v({0.3, 0.0}), v({-0.5, 0.4})}, 1.0, 0.05, 0.8);
    s.theta_bar = {0.5, 1.5, 2.0};
    const VectorXd grad = v({0.6, -1.1});
    const double t = 2.3;
    const auto d = adaptive_rhs(s, grad, cfg, t);
    const double phis[3] = {std::cos(1.7 * t), std::sin(1.7 * t), std::cos(2 * 1.7 * t)};
    for (int i = 0; i < 3; ++i) {
        const VectorXd expected =
            -(s.theta_bar[i] * s.theta_bar[i] / (2 * 0.05)) * grad * phis[i] - 0.8 * s.theta_hat[i];
        CHECK((d[i] - expected).norm() < 1e-13);
    }
}

TEST_CASE("epsilon = 0 is a configuration error") {
    FatConfig cfg;
    cfg.terms = 1;
    const auto s = make_state({VectorXd::Zero(2)}, 0.5, 0.0, 1.0);
    CHECK_THROWS_AS(adaptive_rhs(s, v({1, 0}), cfg, 0.0), ConfigError);
    CHECK_THROWS_AS(validate(s, cfg, 2), ConfigError);
    CHECK_THROWS_AS(validate(make_state({VectorXd::Zero(2)}, 0.5, -0.1, 1.0), cfg, 2), ConfigError);
}

TEST_CASE("config and state validation") {
    FatConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.terms = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = FatConfig{};
    cfg.omega = 0.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = FatConfig{};
    cfg.truncation_bound = -1e-3;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);

    cfg = FatConfig{};
    cfg.terms = 2;
    CHECK_THROWS_AS(validate(make_state({VectorXd::Zero(3)}, 0.5, 0.1, 1.0), cfg, 3), std::invalid_argument);
    CHECK_THROWS_AS(validate(make_state({VectorXd::Zero(3), VectorXd::Zero(2)}, 0.5, 0.1, 1.0), cfg, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(make_state({VectorXd::Zero(3), VectorXd::Zero(3)}, 0.0, 0.1, 1.0), cfg, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate(make_state({VectorXd::Zero(3), VectorXd::Zero(3)}, 0.5, 0.1, 0.0), cfg, 3),
                    std::invalid_argument);
    CHECK_NOTHROW(validate(make_state({VectorXd::Zero(3), VectorXd::Zero(3)}, 0.5, 0.1, 1.0), cfg, 3));
}

TEST_CASE("basis functions are pairwise orthogonal over one period") {
    for (double omega : {1.0, 2.5}) {
        const double period = 2 * pi / omega;
        for (int i = 1; i <= 4; ++i) {
            for (int j = 1; j <= 4; ++j) {
                const double integral = oracle::trapezoid(
                    [&](double t) { return basis(i, omega, t) * basis(j, omega, t); }, 0.0, period, 10000);
                const double expected = i == j ? pi / omega : 0.0;
                CHECK(std::abs(integral - expected) < 1e-6);
            }
        }
    }
}

TEST_CASE("pure leak decays exponentially") {
    FatConfig cfg;
    cfg.terms = 2;
    const int n = 3;
    AdaptiveState s = make_state({v({1.0, -2.0, 0.5}), v({0.3, 0.0, -0.7})}, 0.5, 0.1, 3.5);
    const VectorXd theta0 = pack_theta(s.theta_hat);
    const OdeProblem law{static_cast<int>(theta0.size()), [&](double t, const VectorXd& packed) {
                             AdaptiveState cur = s;
                             cur.theta_hat = unpack_theta(packed, cfg.terms, n);
                             return pack_theta(adaptive_rhs(cur, VectorXd::Zero(n), cfg, t));
                         }};
    integrate(law, 0.0, theta0, 2.0, 1e-3, [&](double t, const VectorXd& packed) {
        const auto theta = unpack_theta(packed, cfg.terms, n);
        for (int i = 0; i < cfg.terms; ++i) {
            const double expected = s.theta_hat[i].norm() * std::exp(-s.mu * t);
            CHECK(std::abs(theta[i].norm() - expected) < 1e-10);
        }
    });
}

TEST_CASE("fat_eval is linear in the parameter stack") {
    std::mt19937_64 rng(11);
    FatConfig cfg;
    cfg.terms = 4;
    cfg.omega = 1.3;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<VectorXd> p, q;
        for (int i = 0; i < 4; ++i) {
            p.push_back(oracle::random_vector(rng, 3, -2, 2));
            q.push_back(oracle::random_vector(rng, 3, -2, 2));
        }
        const double alpha = 1.7, beta = -0.4, t = 0.37 * trial;
        std::vector<VectorXd> mix;
        for (int i = 0; i < 4; ++i) mix.push_back(alpha * p[i] + beta * q[i]);
        const VectorXd lhs = fat_eval(make_state(mix, 1, 0.1, 1), cfg, t);
        const VectorXd rhs =
            alpha * fat_eval(make_state(p, 1, 0.1, 1), cfg, t) + beta * fat_eval(make_state(q, 1, 0.1, 1), cfg, t);
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("pack and unpack") {
    const std::vector<VectorXd> theta = {v({1, 2, 3}), v({4, 5, 6})};
    const VectorXd packed = pack_theta(theta);
    CHECK(packed == v({1, 2, 3, 4, 5, 6}));
    const auto back = unpack_theta(packed, 2, 3);
    CHECK(back.size() == 2);
    CHECK(back[0] == theta[0]);
    CHECK(back[1] == theta[1]);
    CHECK_THROWS_AS(unpack_theta(packed, 2, 2), std::invalid_argument);
}
