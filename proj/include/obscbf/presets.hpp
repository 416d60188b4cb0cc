#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "obscbf/simloop.hpp"

namespace obscbf {

/// Plain parameters of a scenario; build_config() turns them into a SimConfig.
/// Field names double as the override keys of the JSON config format.
struct PresetParams {
    std::string name;

    VectorXd x0;
    VectorXd xhat0;
    VectorXd u_nominal;  ///< constant nominal input

    int terms = 3;                  ///< "N"
    double omega = 1.0;             ///< "omega"
    double truncation_bound = 0.1;  ///< "E"
    std::vector<double> theta_bar;  ///< "theta_bar" (number or list of N)
    std::vector<VectorXd> theta_hat0;
    double epsilon = 0.1;
    double mu = 1.0;

    double bound_D = 2.0;        ///< "D"
    double bound_lambda = -0.05; ///< "lambda"
    double lambda1 = 2.0;        ///< chain root, example1b only

    double t_end = 10.0;
    double dt = 1e-3;
    Controller controller = Controller::proposed;
    double baseline_gamma = 1.0;
    bool strict_feasibility = false;
    InfeasiblePolicy infeasible_policy = InfeasiblePolicy::apply_nominal;
    std::optional<VectorXd> u_min;
    std::optional<VectorXd> u_max;
};

struct ExperimentPreset {
    std::string name;
    PresetParams params;
    SimConfig cfg;
};

/// Names accepted by make_preset_params().
const std::vector<std::string>& preset_names();

/// Default parameters of a scenario. Throws std::invalid_argument on an unknown name.
PresetParams make_preset_params(std::string_view name);

/// Builds plant, observer, barrier and adaptive state for the named scenario.
SimConfig build_config(const PresetParams& params);

ExperimentPreset make_preset(std::string_view name);

/// Applies flat override keys to `params`, rejecting unknown keys and
/// invalid values (ValidationError naming the key).
void apply_overrides(PresetParams& params, const nlohmann::json& overrides);

/// Parses a JSON config document: {"preset": "<name>", <override keys>...}.
/// Malformed text raises ParseError with the line number.
ExperimentPreset parse_experiment(const std::string& text);
SimConfig parse_config(const std::string& text);

}  // namespace obscbf
