#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "obscbf/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Observer-based adaptive CBF safety filter simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a scenario with the proposed and baseline controllers");
    std::string preset;
    std::string config;
    std::string out_dir = "out";
    double dt = 0.0;
    double t_end = 0.0;
    bool strict = false;
    auto* preset_opt = run->add_option("--preset", preset, "Scenario name (example1a, example1b, example2)");
    auto* config_opt = run->add_option("--config", config, "JSON config document")->check(CLI::ExistingFile);
    preset_opt->excludes(config_opt);
    auto* dt_opt = run->add_option("--dt", dt, "Step size [s]");
    auto* t_end_opt = run->add_option("--t-end", t_end, "Horizon [s]");
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_flag("--strict", strict, "Abort with exit code 2 if the epsilon check fails");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : obscbf::exit_error;
    }

    nlohmann::json overrides = nlohmann::json::object();
    if (*dt_opt) overrides["dt"] = dt;
    if (*t_end_opt) overrides["t_end"] = t_end;
    if (strict) overrides["strict_feasibility"] = true;

    if (!*preset_opt && !*config_opt) {
        std::cerr << "error: one of --preset or --config is required\n";
        return obscbf::exit_error;
    }
    if (*config_opt) {
        std::ifstream f(config);
        std::stringstream ss;
        ss << f.rdbuf();
        return obscbf::run_config(ss.str(), overrides, out_dir, std::cout, std::cerr);
    }
    return obscbf::run_preset(preset, overrides, out_dir, std::cout, std::cerr);
}
