#pragma once

#include <functional>

#include <Eigen/Dense>

namespace obscbf {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Known bound M(t) >= ||xhat(t) - x(t)|| supplied alongside an observer.
///
/// Three forms are supported:
///  - exponential: M(t) = D exp(-lambda t), taken literally for any sign of lambda
///  - constant:    M(t) = beta (e.g. the generalisation bound of a learned observer)
///  - interval:    M(t) = 1/2 ||xbar(t) - xunder(t)||, given as a callable together
///                 with its time derivative
class ErrorBoundModel {
public:
    enum class Kind { exponential, constant, interval };

    static ErrorBoundModel exponential(double D, double lambda);
    static ErrorBoundModel constant(double beta);
    static ErrorBoundModel interval(std::function<double(double)> bound,
                                    std::function<double(double)> bound_rate);

    Kind kind() const noexcept { return kind_; }
    double value(double t) const;
    double derivative(double t) const;

    double scale() const noexcept { return scale_; }  ///< D or beta
    double rate() const noexcept { return rate_; }    ///< lambda (exponential only)

private:
    ErrorBoundModel() = default;

    Kind kind_ = Kind::constant;
    double scale_ = 0.0;
    double rate_ = 0.0;
    std::function<double(double)> bound_;
    std::function<double(double)> bound_rate_;
};

/// M(t); rejects negative t.
double error_bound(const ErrorBoundModel& model, double t);

/// Half the Euclidean width of an interval estimate. Requires upper >= lower componentwise.
double interval_bound(const VectorXd& upper, const VectorXd& lower);

/// Observer xhat_dot = v(xhat, y, u) paired with its error bound.
struct EeqObserver {
    int dim = 0;         ///< n
    int output_dim = 0;  ///< k
    int input_dim = 0;   ///< m
    std::function<VectorXd(const VectorXd& xhat, const VectorXd& y, const VectorXd& u, double t)> rhs;
    ErrorBoundModel bound = ErrorBoundModel::constant(0.0);
};

VectorXd eval_observer_rhs(const EeqObserver& obs, const VectorXd& xhat, const VectorXd& y,
                           const VectorXd& u, double t);

/// xhat_dot = A xhat + B u + gain (y - C xhat).
EeqObserver make_luenberger(const MatrixXd& A, const MatrixXd& B, const MatrixXd& C,
                            const MatrixXd& gain, ErrorBoundModel bound);

struct RosslerParams {
    double a = 0.2;
    double b = 0.2;
    double c = 5.0;
};

/// Linear plus odd-power output-injection gains for the Rossler observer.
struct RosslerObserverGains {
    double q1 = 3.0, s1 = -3.0, r1 = 3.0;
    double q2 = 10.0, s2 = 10.0, r2 = 10.0;
    int power = 3;
};

EeqObserver make_rossler_observer(const RosslerObserverGains& gains, const RosslerParams& params,
                                  ErrorBoundModel bound);

}  // namespace obscbf
