#include "obscbf/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "obscbf/errors.hpp"
#include "obscbf/plot.hpp"
#include "obscbf/trace_io.hpp"

namespace obscbf {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool epsilon_admitted(double bound, double eps) { return bound > 0.0 && eps > 0.0 && eps <= bound; }

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << content;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

std::string format_feasibility(const ExperimentPreset& preset) {
    const SimConfig& cfg = preset.cfg;
    const double bound = epsilon_bound(cfg);
    const double eps = cfg.adaptive0.epsilon;
    std::ostringstream os;
    os << "[" << preset.name << "] epsilon feasibility at t = 0\n";
    if (const auto* chain = std::get_if<BarrierChain>(&cfg.barrier)) {
        for (int k = 0; k < chain->relative_degree(); ++k) {
            os << "  s" << k << "^M(xhat0, 0) = " << num(skm_eval(*chain, k, cfg.xhat0, 0.0, cfg.observer.bound))
               << "  (L" << k << " = " << num(chain->lipschitz[static_cast<std::size_t>(k)]) << ")\n";
        }
    } else {
        const auto& rd1 = std::get<BarrierRd1>(cfg.barrier);
        os << "  h0(xhat0, 0) = " << num(h0_eval(rd1, cfg.xhat0, 0.0, cfg.observer.bound)) << "  (L = "
           << num(rd1.lipschitz) << ")\n";
    }
    os << "  denominator = " << num(epsilon_denominator(cfg.adaptive0, cfg.fat)) << "\n";
    os << "  epsilon bound = " << num(bound) << ", epsilon = " << num(eps) << " -> "
       << (epsilon_admitted(bound, eps) ? "ok" : "NOT admitted") << "\n";
    if (bound <= 0.0) {
        os << "warning: epsilon bound is non-positive (" << num(bound)
           << "); no epsilon satisfies the initial condition with the configured Lipschitz constants\n";
    } else if (!epsilon_admitted(bound, eps)) {
        os << "warning: epsilon " << num(eps) << " exceeds the admissible bound " << num(bound) << "\n";
    }
    return os.str();
}

std::string format_report(const std::string& label, const SafetyReport& r) {
    std::ostringstream os;
    os << "[" << label << "] min h(x) = " << num(r.min_h_true) << ", min h0(xhat) = " << num(r.min_h0)
       << ", first violation: " << (r.first_violation_t ? num(*r.first_violation_t) + " s" : std::string("none"))
       << ", bound violations = " << r.bound_violations << ", infeasible steps = " << r.infeasible_steps
       << ", epsilon " << num(r.epsilon_used) << " / bound " << num(r.epsilon_bound)
       << (r.epsilon_ok ? " (ok)" : " (not admitted)") << "\n";
    return os.str();
}

int run_experiment(const ExperimentPreset& preset, const std::filesystem::path& out_dir, std::ostream& out,
                   std::ostream& err) {
    const SimConfig& cfg = preset.cfg;
    out << format_feasibility(preset);
    const double bound = epsilon_bound(cfg);
    if (cfg.strict_feasibility && !epsilon_admitted(bound, cfg.adaptive0.epsilon)) {
        err << "error: strict feasibility check failed for " << preset.name << "\n";
        return exit_infeasible;
    }
    try {
        const auto [proposed, baseline] = run_pair(cfg);
        std::filesystem::create_directories(out_dir);
        write_file(out_dir / (preset.name + "_proposed.csv"), emit_csv(proposed));
        write_file(out_dir / (preset.name + "_baseline.csv"), emit_csv(baseline));
        const std::vector<LabeledTrace> series = {{"proposed", proposed}, {"baseline", baseline}};
        write_file(out_dir / (preset.name + "_h.svg"), emit_plot(series, "h_true"));
        out << format_report("proposed", safety_report(proposed, cfg));
        out << format_report("baseline", safety_report(baseline, cfg));
        out << "wrote " << (out_dir / (preset.name + "_proposed.csv")).string() << ", "
            << (out_dir / (preset.name + "_baseline.csv")).string() << ", "
            << (out_dir / (preset.name + "_h.svg")).string() << "\n";
    } catch (const FeasibilityError& e) {
        err << "error: " << e.what() << "\n";
        return exit_infeasible;
    } catch (const RunError& e) {
        err << "error: " << e.what() << " (last valid sample at t = " << num(e.last_sample().t) << ")\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_ok;
}

int run_preset(const std::string& name, const nlohmann::json& overrides, const std::filesystem::path& out_dir,
               std::ostream& out, std::ostream& err) {
    const auto& names = preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        err << "error: unknown preset \"" << name << "\" (available:";
        for (const auto& n : names) err << " " << n;
        err << ")\n";
        return exit_error;
    }
    ExperimentPreset preset;
    try {
        preset.params = make_preset_params(name);
        apply_overrides(preset.params, overrides);
        preset.name = preset.params.name;
        preset.cfg = build_config(preset.params);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return run_experiment(preset, out_dir, out, err);
}

int run_config(const std::string& text, const nlohmann::json& overrides, const std::filesystem::path& out_dir,
               std::ostream& out, std::ostream& err) {
    ExperimentPreset preset;
    try {
        preset = parse_experiment(text);
        if (!overrides.is_null() && !overrides.empty()) {
            apply_overrides(preset.params, overrides);
            preset.cfg = build_config(preset.params);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return run_experiment(preset, out_dir, out, err);
}

}  // namespace obscbf
