#include "obscbf/presets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "obscbf/errors.hpp"

namespace obscbf {

namespace {

using nlohmann::json;

VectorXd vec(std::initializer_list<double> v) {
    VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

std::vector<VectorXd> zeros(int terms, int n) {
    return std::vector<VectorXd>(static_cast<std::size_t>(terms), VectorXd::Zero(n));
}

BarrierRd1 coordinate_barrier(int index, double offset) {
    BarrierRd1 b;
    b.h = [index, offset](const VectorXd& x) { return x(index) + offset; };
    b.grad_h = [index](const VectorXd& x) -> VectorXd {
        VectorXd g = VectorXd::Zero(x.size());
        g(index) = 1.0;
        return g;
    };
    b.lipschitz = 1.0;
    return b;
}

// h = x1 - 1 on the linear plant; s1 = grad(h) . A x + lambda1 h.
BarrierChain example1b_chain(double lambda1) {
    const BarrierRd1 h = coordinate_barrier(0, -1.0);
    const MatrixXd A = example1::state_matrix();
    const VectorXd grad_s1 = A.row(0).transpose() + lambda1 * vec({1.0, 0.0, 0.0});

    BarrierChain chain;
    chain.s = {h.h, [grad_s1, lambda1](const VectorXd& x) { return grad_s1.dot(x) - lambda1; }};
    chain.grad_s = {h.grad_h, [grad_s1](const VectorXd&) -> VectorXd { return grad_s1; }};
    chain.lambda = {lambda1};
    chain.lipschitz = {1.0, grad_s1.norm()};
    return chain;
}

// --- override parsing ------------------------------------------------------

double number(const json& v, const std::string& key) {
    if (!v.is_number()) throw ValidationError(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(key, "must be finite");
    return d;
}

VectorXd vector_of(const json& v, const std::string& key, Eigen::Index len) {
    if (!v.is_array()) throw ValidationError(key, "expected a list of numbers");
    if (static_cast<Eigen::Index>(v.size()) != len) {
        throw ValidationError(key, "expected " + std::to_string(len) + " entries");
    }
    VectorXd out(len);
    for (Eigen::Index i = 0; i < len; ++i) out(i) = number(v[static_cast<std::size_t>(i)], key);
    return out;
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ValidationError(key, what);
}

const std::vector<std::string>& override_keys() {
    static const std::vector<std::string> keys = {
        "x0",    "xhat0",   "u_nominal",      "N",          "omega",          "E",
        "theta_bar", "theta_hat0", "epsilon", "mu",         "D",              "lambda",
        "lambda1", "t_end", "dt",             "controller", "baseline_gamma", "strict_feasibility",
        "infeasible_policy", "u_min", "u_max"};
    return keys;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"example1a", "example1b", "example2"};
    return names;
}

PresetParams make_preset_params(std::string_view name) {
    PresetParams p;
    p.name = std::string(name);
    p.terms = 3;
    p.omega = 1.0;
    p.truncation_bound = 0.1;
    p.theta_bar.assign(3, 0.5);
    p.theta_hat0 = zeros(3, 3);
    p.epsilon = 0.1;
    p.bound_D = 2.0;
    p.t_end = 10.0;
    p.dt = 1e-3;

    if (name == "example1a") {
        p.x0 = vec({2.0, 2.2, 2.0});
        p.xhat0 = vec({3.0, 3.5, 3.0});
        p.mu = 3.5;
        p.bound_lambda = -0.05;
        p.u_nominal = vec({-2.0});
    } else if (name == "example1b") {
        p.x0 = vec({2.4, -3.0, -3.0});
        p.xhat0 = vec({3.4, -2.0, -2.0});
        p.mu = 10.0;
        p.lambda1 = 2.0;
        p.bound_lambda = -0.05;
        p.u_nominal = vec({-2.0});
    } else if (name == "example2") {
        p.x0 = vec({-0.5, 0.5, 3.0});
        p.xhat0 = vec({0.2, 2.0, 3.0});
        p.mu = 2.5;
        p.bound_lambda = -0.15;
        p.u_nominal = vec({-2.0, -2.0, -2.0});
    } else {
        throw std::invalid_argument("unknown preset \"" + std::string(name) + "\"");
    }
    p.baseline_gamma = p.mu;
    return p;
}

SimConfig build_config(const PresetParams& p) {
    SimConfig cfg;
    const ErrorBoundModel bound = ErrorBoundModel::exponential(p.bound_D, p.bound_lambda);

    if (p.name == "example1a" || p.name == "example1b") {
        cfg.system = make_example1_system();
        // The injection gain stabilises A + L C, so it multiplies (C xhat - y).
        cfg.observer = make_luenberger(example1::state_matrix(), example1::input_matrix(),
                                       example1::output_matrix(), -example1::injection_gain(), bound);
        if (p.name == "example1a") {
            cfg.barrier = coordinate_barrier(1, -1.0);
        } else {
            cfg.barrier = example1b_chain(p.lambda1);
        }
    } else if (p.name == "example2") {
        const RosslerParams rp{0.2, 0.2, 5.0};
        cfg.system = make_rossler_system(rp.a, rp.b, rp.c);
        cfg.observer = make_rossler_observer(RosslerObserverGains{}, rp, bound);
        cfg.barrier = coordinate_barrier(1, 1.0);
    } else {
        throw std::invalid_argument("unknown preset \"" + p.name + "\"");
    }

    cfg.fat.terms = p.terms;
    cfg.fat.omega = p.omega;
    cfg.fat.truncation_bound = p.truncation_bound;
    cfg.adaptive0.theta_hat = p.theta_hat0;
    cfg.adaptive0.theta_bar = p.theta_bar;
    cfg.adaptive0.epsilon = p.epsilon;
    cfg.adaptive0.mu = p.mu;
    cfg.x0 = p.x0;
    cfg.xhat0 = p.xhat0;
    cfg.u_nominal = [u = p.u_nominal](double, const VectorXd&) -> VectorXd { return u; };
    cfg.t_end = p.t_end;
    cfg.dt = p.dt;
    cfg.controller = p.controller;
    cfg.baseline_gamma = p.baseline_gamma;
    cfg.strict_feasibility = p.strict_feasibility;
    cfg.infeasible_policy = p.infeasible_policy;
    if (p.u_min || p.u_max) {
        const auto m = p.u_nominal.size();
        const double inf = std::numeric_limits<double>::infinity();
        cfg.input_box = InputBox{p.u_min.value_or(VectorXd::Constant(m, -inf)),
                                 p.u_max.value_or(VectorXd::Constant(m, inf))};
    }
    validate(cfg);
    return cfg;
}

ExperimentPreset make_preset(std::string_view name) {
    ExperimentPreset e;
    e.params = make_preset_params(name);
    e.name = e.params.name;
    e.cfg = build_config(e.params);
    return e;
}

void apply_overrides(PresetParams& p, const json& overrides) {
    if (overrides.is_null()) return;
    if (!overrides.is_object()) throw ValidationError("<document>", "overrides must be a JSON object");
    const auto& known = override_keys();
    for (const auto& [key, _] : overrides.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ValidationError(key, "unknown key");
        }
    }
    const auto n = p.x0.size();
    const auto m = p.u_nominal.size();
    const auto has = [&](const char* k) { return overrides.contains(k); };

    if (has("N")) {
        const json& v = overrides["N"];
        require(v.is_number_integer() && v.get<long long>() >= 1, "N", "must be an integer >= 1");
        p.terms = v.get<int>();
        const double fill = p.theta_bar.empty() ? 0.5 : p.theta_bar.front();
        p.theta_bar.assign(static_cast<std::size_t>(p.terms), fill);
        p.theta_hat0 = zeros(p.terms, static_cast<int>(n));
    }
    if (has("theta_bar")) {
        const json& v = overrides["theta_bar"];
        if (v.is_array()) {
            const VectorXd tb = vector_of(v, "theta_bar", p.terms);
            p.theta_bar.assign(tb.data(), tb.data() + tb.size());
        } else {
            p.theta_bar.assign(static_cast<std::size_t>(p.terms), number(v, "theta_bar"));
        }
        for (double tb : p.theta_bar) require(tb > 0.0, "theta_bar", "must be positive");
    }
    if (has("theta_hat0")) {
        const json& v = overrides["theta_hat0"];
        require(v.is_array() && static_cast<int>(v.size()) == p.terms, "theta_hat0",
                "expected a list of N vectors");
        for (int i = 0; i < p.terms; ++i) {
            p.theta_hat0[static_cast<std::size_t>(i)] = vector_of(v[static_cast<std::size_t>(i)], "theta_hat0", n);
        }
    }
    if (has("x0")) p.x0 = vector_of(overrides["x0"], "x0", n);
    if (has("xhat0")) p.xhat0 = vector_of(overrides["xhat0"], "xhat0", n);
    if (has("u_nominal")) p.u_nominal = vector_of(overrides["u_nominal"], "u_nominal", m);
    if (has("u_min")) p.u_min = vector_of(overrides["u_min"], "u_min", m);
    if (has("u_max")) p.u_max = vector_of(overrides["u_max"], "u_max", m);
    if (p.u_min && p.u_max) {
        require(((*p.u_min).array() <= (*p.u_max).array()).all(), "u_min", "must not exceed u_max");
    }

    const auto positive = [&](const char* key, double& field) {
        if (!has(key)) return;
        field = number(overrides[key], key);
        require(field > 0.0, key, "must be positive");
    };
    positive("omega", p.omega);
    positive("epsilon", p.epsilon);
    positive("mu", p.mu);
    positive("lambda1", p.lambda1);
    positive("dt", p.dt);
    positive("baseline_gamma", p.baseline_gamma);
    if (has("E")) {
        p.truncation_bound = number(overrides["E"], "E");
        require(p.truncation_bound >= 0.0, "E", "must be non-negative");
    }
    if (has("D")) {
        p.bound_D = number(overrides["D"], "D");
        require(p.bound_D >= 0.0, "D", "must be non-negative");
    }
    if (has("lambda")) p.bound_lambda = number(overrides["lambda"], "lambda");
    if (has("t_end")) {
        p.t_end = number(overrides["t_end"], "t_end");
        require(p.t_end >= 0.0, "t_end", "must be non-negative");
    }
    if (has("strict_feasibility")) {
        const json& v = overrides["strict_feasibility"];
        require(v.is_boolean(), "strict_feasibility", "expected true or false");
        p.strict_feasibility = v.get<bool>();
    }
    if (has("controller")) {
        const json& v = overrides["controller"];
        require(v.is_string(), "controller", "expected \"proposed\" or \"baseline\"");
        const auto s = v.get<std::string>();
        require(s == "proposed" || s == "baseline", "controller", "expected \"proposed\" or \"baseline\"");
        p.controller = s == "proposed" ? Controller::proposed : Controller::baseline;
    }
    if (has("infeasible_policy")) {
        const json& v = overrides["infeasible_policy"];
        const std::string what = "expected \"apply_nominal\" or \"hold_last\"";
        require(v.is_string(), "infeasible_policy", what);
        const auto s = v.get<std::string>();
        require(s == "apply_nominal" || s == "hold_last", "infeasible_policy", what);
        p.infeasible_policy =
            s == "hold_last" ? InfeasiblePolicy::hold_last_feasible : InfeasiblePolicy::apply_nominal;
    }
}

ExperimentPreset parse_experiment(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
        throw ParseError(line, e.what());
    }
    if (!doc.is_object()) throw ParseError(1, "config document must be a JSON object");
    if (!doc.contains("preset") || !doc["preset"].is_string()) {
        throw ValidationError("preset", "a preset name is required");
    }
    const auto name = doc["preset"].get<std::string>();
    const auto& names = preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ValidationError("preset", "unknown preset \"" + name + "\"");
    }
    doc.erase("preset");

    ExperimentPreset e;
    e.params = make_preset_params(name);
    apply_overrides(e.params, doc);
    e.name = e.params.name;
    e.cfg = build_config(e.params);
    return e;
}

SimConfig parse_config(const std::string& text) { return parse_experiment(text).cfg; }

}  // namespace obscbf
