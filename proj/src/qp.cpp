#include "obscbf/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace obscbf {

QpResult solve_halfspace_qp(const VectorXd& u_d, const ConstraintCoeffs& c) {
    if (c.a.size() != u_d.size()) {
        throw std::invalid_argument("solve_halfspace_qp: constraint and input lengths differ");
    }
    QpResult res;
    const double slack = c.residual(u_d);
    if (slack >= 0.0) {
        res.u = u_d;
        return res;
    }
    const double aa = c.a.squaredNorm();
    if (aa > 0.0) {
        res.u = u_d - (slack / aa) * c.a;
        res.active = true;
        return res;
    }
    res.u = u_d;
    res.feasible = false;
    return res;
}

QpResult solve_boxed_qp(const VectorXd& u_d, const ConstraintCoeffs& c, const VectorXd& lo,
                        const VectorXd& hi) {
    const auto m = u_d.size();
    if (m > 4) throw std::invalid_argument("solve_boxed_qp: supports at most 4 inputs");
    if (c.a.size() != m || lo.size() != m || hi.size() != m) {
        throw std::invalid_argument("solve_boxed_qp: length mismatch");
    }
    if ((lo.array() > hi.array()).any()) {
        throw std::invalid_argument("solve_boxed_qp: lo must not exceed hi");
    }

    QpResult res;
    const VectorXd clamped = u_d.cwiseMax(lo).cwiseMin(hi);
    if (c.residual(clamped) >= 0.0) {
        res.u = clamped;
        return res;
    }

    // The box minimiser violates the halfspace, so the optimum lies on a . u + b = 0.
    double best_reach = c.b;
    for (Eigen::Index i = 0; i < m; ++i) best_reach += std::max(c.a(i) * lo(i), c.a(i) * hi(i));
    if (best_reach < 0.0) {
        res.u = clamped;
        res.feasible = false;
        return res;
    }

    const double tol = 1e-12 * (1.0 + c.a.lpNorm<Eigen::Infinity>() * (1.0 + u_d.lpNorm<Eigen::Infinity>()) +
                                std::abs(c.b));
    double best_cost = std::numeric_limits<double>::infinity();
    VectorXd best = clamped;

    // Each coordinate is free (0), pinned at lo (1) or pinned at hi (2).
    int faces = 1;
    for (Eigen::Index i = 0; i < m; ++i) faces *= 3;
    VectorXd cand(m);
    for (int code = 0; code < faces; ++code) {
        int rest = code;
        double offset = c.b;
        double free_norm = 0.0;
        double free_slack = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const int face = rest % 3;
            rest /= 3;
            if (face == 0) {
                cand(i) = u_d(i);
                free_norm += c.a(i) * c.a(i);
                free_slack += c.a(i) * u_d(i);
            } else {
                cand(i) = face == 1 ? lo(i) : hi(i);
                offset += c.a(i) * cand(i);
            }
        }
        // Project the free coordinates onto the hyperplane restricted to this face.
        const double violation = free_slack + offset;
        if (free_norm > 0.0) {
            rest = code;
            for (Eigen::Index i = 0; i < m; ++i) {
                if (rest % 3 == 0) cand(i) -= violation / free_norm * c.a(i);
                rest /= 3;
            }
        } else if (std::abs(violation) > tol) {
            continue;
        }
        if ((cand.array() < lo.array() - tol).any() || (cand.array() > hi.array() + tol).any()) continue;
        if (c.residual(cand) < -tol) continue;
        const double cost = (cand - u_d).squaredNorm();
        if (cost < best_cost) {
            best_cost = cost;
            best = cand.cwiseMax(lo).cwiseMin(hi);
        }
    }
    res.u = best;
    res.active = true;
    res.feasible = std::isfinite(best_cost);
    return res;
}

}  // namespace obscbf
