#include "obscbf/observer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace obscbf {

ErrorBoundModel ErrorBoundModel::exponential(double D, double lambda) {
    if (!(D >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("exponential bound needs D >= 0 and finite lambda");
    }
    ErrorBoundModel m;
    m.kind_ = Kind::exponential;
    m.scale_ = D;
    m.rate_ = lambda;
    return m;
}

ErrorBoundModel ErrorBoundModel::constant(double beta) {
    if (!(beta >= 0.0)) {
        throw std::invalid_argument("constant bound needs beta >= 0");
    }
    ErrorBoundModel m;
    m.kind_ = Kind::constant;
    m.scale_ = beta;
    return m;
}

ErrorBoundModel ErrorBoundModel::interval(std::function<double(double)> bound,
                                          std::function<double(double)> bound_rate) {
    if (!bound || !bound_rate) {
        throw std::invalid_argument("interval bound needs both M(t) and dM/dt");
    }
    ErrorBoundModel m;
    m.kind_ = Kind::interval;
    m.bound_ = std::move(bound);
    m.bound_rate_ = std::move(bound_rate);
    return m;
}

double ErrorBoundModel::value(double t) const {
    switch (kind_) {
        case Kind::exponential:
            return scale_ * std::exp(-rate_ * t);
        case Kind::constant:
            return scale_;
        case Kind::interval:
            return bound_(t);
    }
    return 0.0;
}

double ErrorBoundModel::derivative(double t) const {
    switch (kind_) {
        case Kind::exponential:
            return -rate_ * scale_ * std::exp(-rate_ * t);
        case Kind::constant:
            return 0.0;
        case Kind::interval:
            return bound_rate_(t);
    }
    return 0.0;
}

double error_bound(const ErrorBoundModel& model, double t) {
    if (t < 0.0) {
        throw std::invalid_argument("error_bound: t must be non-negative");
    }
    return model.value(t);
}

double interval_bound(const VectorXd& upper, const VectorXd& lower) {
    if (upper.size() != lower.size()) {
        throw std::invalid_argument("interval_bound: length mismatch");
    }
    if ((upper.array() < lower.array()).any()) {
        throw std::invalid_argument("interval_bound: upper bound below lower bound");
    }
    return 0.5 * (upper - lower).norm();
}

VectorXd eval_observer_rhs(const EeqObserver& obs, const VectorXd& xhat, const VectorXd& y,
                           const VectorXd& u, double t) {
    if (xhat.size() != obs.dim || y.size() != obs.output_dim || u.size() != obs.input_dim) {
        throw std::invalid_argument("eval_observer_rhs: dimension mismatch");
    }
    return obs.rhs(xhat, y, u, t);
}

EeqObserver make_luenberger(const MatrixXd& A, const MatrixXd& B, const MatrixXd& C,
                            const MatrixXd& gain, ErrorBoundModel bound) {
    const auto n = A.rows();
    if (A.cols() != n || B.rows() != n || C.cols() != n || gain.rows() != n ||
        gain.cols() != C.rows()) {
        throw std::invalid_argument("make_luenberger: inconsistent matrix shapes");
    }
    EeqObserver obs;
    obs.dim = static_cast<int>(n);
    obs.output_dim = static_cast<int>(C.rows());
    obs.input_dim = static_cast<int>(B.cols());
    obs.rhs = [A, B, C, gain](const VectorXd& xhat, const VectorXd& y, const VectorXd& u,
                              double) -> VectorXd {
        return A * xhat + B * u + gain * (y - C * xhat);
    };
    obs.bound = std::move(bound);
    return obs;
}

EeqObserver make_rossler_observer(const RosslerObserverGains& gains, const RosslerParams& params,
                                  ErrorBoundModel bound) {
    if (gains.power < 1 || gains.power % 2 == 0) {
        throw std::invalid_argument("make_rossler_observer: power must be a positive odd integer");
    }
    EeqObserver obs;
    obs.dim = 3;
    obs.output_dim = 1;
    obs.input_dim = 3;
    obs.rhs = [g = gains, p = params](const VectorXd& xhat, const VectorXd& y, const VectorXd& u,
                                      double) -> VectorXd {
        const double e = y(0) - xhat(0);
        const double ep = std::pow(e, g.power);
        VectorXd d(3);
        d << -xhat(1) - xhat(2) + g.q1 * e + g.q2 * ep + u(0),
             xhat(0) + p.a * xhat(1) + g.s1 * e + g.s2 * ep + u(1),
             p.b + xhat(2) * (xhat(0) - p.c) + g.r1 * e + g.r2 * ep + u(2);
        return d;
    };
    obs.bound = std::move(bound);
    return obs;
}

}  // namespace obscbf
