#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "obscbf/presets.hpp"
#include "obscbf/simloop.hpp"

namespace obscbf {

enum ExitStatus : int { exit_ok = 0, exit_error = 1, exit_infeasible = 2 };

/// Epsilon feasibility check at the initial estimate, human readable.
/// Includes a "warning:" line when the bound is non-positive or exceeded.
std::string format_feasibility(const ExperimentPreset& preset);

std::string format_report(const std::string& label, const SafetyReport& report);

/// Runs the proposed/baseline pair for an experiment and writes
/// <name>_proposed.csv, <name>_baseline.csv and <name>_h.svg into out_dir.
int run_experiment(const ExperimentPreset& preset, const std::filesystem::path& out_dir,
                   std::ostream& out, std::ostream& err);

int run_preset(const std::string& name, const nlohmann::json& overrides,
               const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

/// As run_preset, starting from a JSON config document. Overrides are applied
/// on top of the document.
int run_config(const std::string& text, const nlohmann::json& overrides,
               const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

}  // namespace obscbf
