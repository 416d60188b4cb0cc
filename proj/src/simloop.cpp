#include "obscbf/simloop.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "obscbf/errors.hpp"
#include "obscbf/integrator.hpp"
#include "obscbf/qp.hpp"

namespace obscbf {

namespace {

// Uniform view of the barrier: s_0 (= h) for safety accounting and the top
// of the chain for the adaptive constraint.
struct BarrierView {
    BarrierChain chain;
    bool is_chain = false;

    double h(const VectorXd& x) const { return chain.s.front()(x); }
    VectorXd grad_h(const VectorXd& x) const { return chain.grad_s.front()(x); }
    double lipschitz0() const { return chain.lipschitz.front(); }
    const ScalarField& top() const { return chain.s.back(); }
    const GradientField& top_grad() const { return chain.grad_s.back(); }
    double top_lipschitz() const { return chain.lipschitz.back(); }
};

BarrierView view_of(const Barrier& barrier) {
    BarrierView v;
    if (const auto* rd1 = std::get_if<BarrierRd1>(&barrier)) {
        v.chain = as_chain(*rd1);
    } else {
        v.chain = std::get<BarrierChain>(barrier);
        v.is_chain = true;
    }
    validate(v.chain);
    return v;
}

AdaptiveState with_theta(const AdaptiveState& base, std::vector<VectorXd> theta) {
    AdaptiveState s;
    s.theta_hat = std::move(theta);
    s.theta_bar = base.theta_bar;
    s.epsilon = base.epsilon;
    s.mu = base.mu;
    return s;
}

}  // namespace

void validate(const SimConfig& cfg) {
    const auto& sys = cfg.system;
    if (sys.n < 1 || sys.m < 1 || sys.k < 1) throw std::invalid_argument("SimConfig: bad system dimensions");
    if (!sys.drift || !sys.input_map || !sys.output_map) {
        throw std::invalid_argument("SimConfig: system callables missing");
    }
    if (cfg.observer.dim != sys.n || cfg.observer.output_dim != sys.k || cfg.observer.input_dim != sys.m ||
        !cfg.observer.rhs) {
        throw std::invalid_argument("SimConfig: observer does not match the plant");
    }
    if (cfg.x0.size() != sys.n || cfg.xhat0.size() != sys.n) {
        throw std::invalid_argument("SimConfig: initial states must have length n");
    }
    if (!cfg.u_nominal) throw std::invalid_argument("SimConfig: nominal control missing");
    if (!(cfg.dt > 0.0)) throw ConfigError("SimConfig: dt must be positive");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("SimConfig: t_end must be non-negative");
    if (!(cfg.baseline_gamma > 0.0)) throw ConfigError("SimConfig: baseline_gamma must be positive");
    validate(cfg.adaptive0, cfg.fat, sys.n);
    if (cfg.input_box) {
        if (cfg.input_box->lo.size() != sys.m || cfg.input_box->hi.size() != sys.m) {
            throw std::invalid_argument("SimConfig: input box must have length m");
        }
    }
    view_of(cfg.barrier);
}

double epsilon_bound(const SimConfig& cfg) {
    const auto& bound = cfg.observer.bound;
    if (const auto* rd1 = std::get_if<BarrierRd1>(&cfg.barrier)) {
        return epsilon_bound_rd1(*rd1, cfg.xhat0, bound, cfg.adaptive0, cfg.fat);
    }
    return epsilon_bound_rdr(std::get<BarrierChain>(cfg.barrier), cfg.xhat0, bound, cfg.adaptive0, cfg.fat);
}

SimTrace run_simulation(const SimConfig& cfg) {
    validate(cfg);
    const double eps_bound = epsilon_bound(cfg);
    const double eps = cfg.adaptive0.epsilon;
    if (cfg.strict_feasibility && !(eps_bound > 0.0 && eps <= eps_bound)) {
        throw FeasibilityError("epsilon = " + std::to_string(eps) + " not admitted; bound is " +
                               std::to_string(eps_bound));
    }

    const BarrierView bar = view_of(cfg.barrier);
    const auto& sys = cfg.system;
    const auto& obs = cfg.observer;
    const auto& bound = obs.bound;
    const int n = sys.n;
    const int N = cfg.fat.terms;
    const bool proposed = cfg.controller == Controller::proposed;

    SimTrace trace;
    trace.n = n;
    trace.m = sys.m;
    trace.terms = N;

    VectorXd z(2 * n + N * n);
    z << cfg.x0, cfg.xhat0, pack_theta(cfg.adaptive0.theta_hat);

    const auto constraint_at = [&](const VectorXd& xhat, double t, const AdaptiveState& st) {
        if (proposed) {
            return bar.is_chain ? constraint_rdr(bar.chain, sys, xhat, t, bound, st, cfg.fat)
                                : constraint_rd1(std::get<BarrierRd1>(cfg.barrier), sys, xhat, t, bound,
                                                 st, cfg.fat);
        }
        const VectorXd grad = bar.grad_h(xhat);
        ConstraintCoeffs c;
        c.a = eval_input_matrix(sys, xhat).transpose() * grad;
        c.b = grad.dot(eval_drift(sys, xhat)) + cfg.baseline_gamma * bar.h(xhat);
        return c;
    };

    std::optional<VectorXd> last_feasible;
    const std::vector<double> grid = step_grid(0.0, cfg.t_end, cfg.dt);
    trace.samples.reserve(grid.size());

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const VectorXd x = z.head(n);
        const VectorXd xhat = z.segment(n, n);
        const AdaptiveState st = with_theta(cfg.adaptive0, unpack_theta(z.tail(N * n), N, n));

        const VectorXd u_d = cfg.u_nominal(t, xhat);
        const ConstraintCoeffs c = constraint_at(xhat, t, st);
        QpResult qp = cfg.input_box ? solve_boxed_qp(u_d, c, cfg.input_box->lo, cfg.input_box->hi)
                                    : solve_halfspace_qp(u_d, c);
        if (qp.feasible) {
            last_feasible = qp.u;
        } else if (cfg.infeasible_policy == InfeasiblePolicy::hold_last_feasible && last_feasible) {
            qp.u = *last_feasible;
        }
        const VectorXd u = qp.u;

        SimSample s;
        s.t = t;
        s.x = x;
        s.xhat = xhat;
        s.u = u;
        s.M = bound.value(t);
        s.h_true = bar.h(x);
        s.h0 = bar.h(xhat) - bar.lipschitz0() * s.M;
        s.barrier_eps = bar.top()(xhat) - bar.top_lipschitz() * s.M - eps;
        s.residual = c.residual(u);
        s.theta_norms.reserve(static_cast<std::size_t>(N));
        for (const auto& th : st.theta_hat) s.theta_norms.push_back(th.norm());
        s.qp_active = qp.active;
        s.qp_feasible = qp.feasible;

        const bool finite = x.allFinite() && xhat.allFinite() && u.allFinite() && std::isfinite(s.residual);
        if (!finite) {
            if (trace.samples.empty()) throw RunError("non-finite initial sample", s);
            throw RunError("closed loop diverged at t = " + std::to_string(t), trace.samples.back());
        }
        trace.samples.push_back(std::move(s));
        if (i + 1 == grid.size()) break;

        OdeProblem ode;
        ode.dim = static_cast<int>(z.size());
        ode.rhs = [&](double tau, const VectorXd& w) -> VectorXd {
            const VectorXd xs = w.head(n);
            const VectorXd xh = w.segment(n, n);
            VectorXd dw(w.size());
            dw.head(n) = eval_drift(sys, xs) + eval_input_matrix(sys, xs) * u;
            dw.segment(n, n) = obs.rhs(xh, eval_output(sys, xs), u, tau);
            if (proposed) {
                const AdaptiveState sa = with_theta(cfg.adaptive0, unpack_theta(w.tail(N * n), N, n));
                dw.tail(N * n) = pack_theta(adaptive_rhs(sa, bar.top_grad()(xh), cfg.fat, tau));
            } else {
                dw.tail(N * n).setZero();
            }
            return dw;
        };
        try {
            z = rk4_step(ode, t, z, grid[i + 1] - t);
        } catch (const IntegrationError& e) {
            throw RunError(std::string("integration failed: ") + e.what(), trace.samples.back());
        }
        if (!z.allFinite()) {
            throw RunError("closed loop diverged after t = " + std::to_string(t), trace.samples.back());
        }
    }
    return trace;
}

SafetyReport safety_report(const SimTrace& trace, const SimConfig& cfg) {
    if (trace.samples.empty()) throw std::invalid_argument("safety_report: empty trace");
    SafetyReport r;
    r.min_h_true = trace.samples.front().h_true;
    r.min_h0 = trace.samples.front().h0;
    for (const auto& s : trace.samples) {
        r.min_h_true = std::min(r.min_h_true, s.h_true);
        r.min_h0 = std::min(r.min_h0, s.h0);
        if (s.h_true < 0.0 && !r.first_violation_t) r.first_violation_t = s.t;
        if ((s.xhat - s.x).norm() > s.M) ++r.bound_violations;
        if (!s.qp_feasible) ++r.infeasible_steps;
    }
    r.epsilon_bound = epsilon_bound(cfg);
    r.epsilon_used = cfg.adaptive0.epsilon;
    r.epsilon_ok = r.epsilon_bound > 0.0 && r.epsilon_used > 0.0 && r.epsilon_used <= r.epsilon_bound;
    return r;
}

std::pair<SimTrace, SimTrace> run_pair(const SimConfig& cfg) {
    SimConfig proposed = cfg;
    proposed.controller = Controller::proposed;
    SimConfig baseline = cfg;
    baseline.controller = Controller::baseline;
    auto fut = std::async(std::launch::async, [&baseline] { return run_simulation(baseline); });
    SimTrace p = run_simulation(proposed);
    return {std::move(p), fut.get()};
}

}  // namespace obscbf
