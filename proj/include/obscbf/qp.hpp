#pragma once

#include <Eigen/Dense>

#include "obscbf/barrier.hpp"

namespace obscbf {

struct QpResult {
    VectorXd u;
    bool active = false;
    bool feasible = true;
};

/// argmin ||u - u_d||^2  s.t.  a . u + b >= 0, in closed form.
///
/// With a = 0 and b < 0 no input is admissible: the result is infeasible and
/// carries u_d unchanged.
QpResult solve_halfspace_qp(const VectorXd& u_d, const ConstraintCoeffs& c);

/// Same objective with the additional box lo <= u <= hi. Exact for m <= 4
/// (enumerates box faces); larger m throws std::invalid_argument.
QpResult solve_boxed_qp(const VectorXd& u_d, const ConstraintCoeffs& c, const VectorXd& lo,
                        const VectorXd& hi);

}  // namespace obscbf
