// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "obscbf/cli.hpp"
#include "obscbf/integrator.hpp"
#include "obscbf/presets.hpp"
#include "obscbf/qp.hpp"
#include "obscbf/simloop.hpp"
#include "oracles.hpp"

using namespace obscbf;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

struct PresetRun {
    ExperimentPreset preset;
    SimTrace proposed;
    SimTrace baseline;
    SafetyReport rp;
    SafetyReport rb;
    double seconds = 0.0;
};

PresetRun run(const std::string& name) {
    PresetRun r;
    r.preset = make_preset(name);
    const auto t0 = std::chrono::steady_clock::now();
    auto [p, b] = run_pair(r.preset.cfg);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.proposed = std::move(p);
    r.baseline = std::move(b);
    r.rp = safety_report(r.proposed, r.preset.cfg);
    r.rb = safety_report(r.baseline, r.preset.cfg);
    return r;
}

double min_residual_feasible(const SimTrace& tr) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& s : tr.samples)
        if (s.qp_feasible) worst = std::min(worst, s.residual);
    return worst;
}

double min_h0(const SimTrace& tr) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& s : tr.samples) worst = std::min(worst, s.h0);
    return worst;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void reproduction(int id, const PresetRun& r, bool with_timing) {
    const bool ok = r.rp.min_h_true >= -1e-6 && r.rb.min_h_true < 0.0 && (!with_timing || r.seconds < 10.0);
    std::string detail = fmt("proposed min h = %.6g, baseline min h = %.6g", r.rp.min_h_true, r.rb.min_h_true);
    if (with_timing) detail += fmt(", pair runtime %.2f s", r.seconds);
    report(id, ok, detail);
}

}  // namespace

int main() {
    std::map<std::string, PresetRun> runs;
    for (const auto& name : preset_names()) runs.emplace(name, run(name));
    const auto& r1a = runs.at("example1a");
    const auto& r1b = runs.at("example1b");
    const auto& r2 = runs.at("example2");

    // 1
    reproduction(1, r1a, true);

    // 2
    {
        std::ostringstream out, err;
        const fs::path dir = fs::temp_directory_path() / "obscbf_acceptance_1b";
        fs::remove_all(dir);
        const int code = run_preset("example1b", nlohmann::json::object(), dir, out, err);
        const bool warned = out.str().find("warning: epsilon bound is non-positive") != std::string::npos;
        const bool ok = r1b.rp.min_h_true >= -1e-6 && r1b.rb.min_h_true < 0.0 && warned && code == exit_ok;
        report(2, ok,
               fmt("proposed min h = %.6g, baseline min h = %.6g, epsilon bound = %.6g", r1b.rp.min_h_true,
                   r1b.rb.min_h_true, r1b.rp.epsilon_bound) +
                   (warned ? ", warning printed" : ", warning missing") + ", exit " + std::to_string(code));
        fs::remove_all(dir);
    }

    // 3
    reproduction(3, r2, false);

    // 4
    {
        const double b1 = epsilon_bound(r1a.preset.cfg);
        const double b2 = epsilon_bound(r2.preset.cfg);
        const bool ok = std::abs(b1 - 0.5 / 3.0) <= 1e-12 && std::abs(b2 - 1.0 / 3.0) <= 1e-12 &&
                        r1a.rp.epsilon_ok && r2.rp.epsilon_ok;
        report(4, ok, fmt("example1a bound %.15g, example2 bound %.15g, epsilon 0.1", b1, b2));
    }

    // 5
    {
        std::mt19937_64 rng(20240501);
        double worst_u = 0.0, worst_obj = 0.0;
        int class_mismatch = 0;
        const int trials = 1000;
        for (int i = 0; i < trials; ++i) {
            const int m = 1 + i % 3;
            const VectorXd ud = oracle::random_vector(rng, m, -2, 2);
            VectorXd a = oracle::random_vector(rng, m, -1, 1);
            while (a.norm() < 0.2) a = oracle::random_vector(rng, m, -1, 1);
            const double b = oracle::random_vector(rng, 1, -2, 2)(0);
            const auto r = solve_halfspace_qp(ud, ConstraintCoeffs{a, b});
            const double inf = std::numeric_limits<double>::infinity();
            const auto g = oracle::grid_qp(ud, a, b, VectorXd::Constant(m, -inf), VectorXd::Constant(m, inf), 0.5,
                                           14, 20.0);
            worst_u = std::max(worst_u, (r.u - g.u).norm());
            worst_obj = std::max(worst_obj, std::abs((r.u - ud).squaredNorm() - g.objective));
            if (r.active != (g.objective > 0.0)) ++class_mismatch;
        }
        report(5, worst_u <= 2e-3 && worst_obj <= 1e-5 && class_mismatch == 0,
               std::to_string(trials) + fmt(" instances: max |du| = %.3g, max |dobj| = %.3g", worst_u, worst_obj) +
                   ", classification mismatches " + std::to_string(class_mismatch));
    }

    // 6
    {
        const OdeProblem decay{1, [](double, const VectorXd& x) -> VectorXd { return -x; }};
        double errs[3];
        const double dts[3] = {1e-2, 5e-3, 2.5e-3};
        for (int k = 0; k < 3; ++k) {
            const VectorXd end = integrate(decay, 0.0, VectorXd::Ones(1), 1.0, dts[k], nullptr);
            errs[k] = std::abs(end(0) - std::exp(-1.0));
        }
        const double q1 = errs[0] / errs[1], q2 = errs[1] / errs[2];
        report(6, q1 >= 14 && q1 <= 18 && q2 >= 14 && q2 <= 18, fmt("error ratios %.4f, %.4f", q1, q2));
    }

    // 7
    {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& [name, r] : runs) worst = std::min(worst, min_residual_feasible(r.proposed));
        const auto& s0 = r1a.proposed.samples.front();
        const bool t0_ok = std::abs(s0.u(0) - 0.35) <= 1e-9 && s0.qp_active;
        report(7, worst >= -1e-8 && t0_ok,
               fmt("min feasible residual %.3g, example1a u(0) = %.12g", worst, s0.u(0)));
    }

    // 8
    {
        const double w1 = min_h0(r1a.proposed), w2 = min_h0(r2.proposed);
        report(8, w1 >= -1e-6 && w2 >= -1e-6, fmt("min h0: example1a %.6g, example2 %.6g", w1, w2));
    }

    // 9
    {
        int total = 0;
        std::string detail;
        for (const auto& [name, r] : runs) {
            total += r.rp.bound_violations + r.rb.bound_violations;
            detail += name + " " + std::to_string(r.rp.bound_violations) + "/" +
                      std::to_string(r.rb.bound_violations) + "  ";
        }
        report(9, total == 0, "bound violations (proposed/baseline): " + detail);
    }

    // 10
    {
        bool identical = true;
        std::string detail;
        for (const auto& name : preset_names()) {
            const fs::path a = fs::temp_directory_path() / ("obscbf_acceptance_a_" + name);
            const fs::path b = fs::temp_directory_path() / ("obscbf_acceptance_b_" + name);
            fs::remove_all(a);
            fs::remove_all(b);
            std::ostringstream out, err;
            const int ca = run_preset(name, nlohmann::json::object(), a, out, err);
            const int cb = run_preset(name, nlohmann::json::object(), b, out, err);
            bool same = ca == exit_ok && cb == exit_ok;
            for (const auto& suffix : {"_proposed.csv", "_baseline.csv", "_h.svg"}) {
                const std::string file = name + suffix;
                const std::string x = slurp(a / file), y = slurp(b / file);
                same = same && !x.empty() && x == y;
            }
            detail += name + (same ? " identical  " : " DIFFERENT  ");
            identical = identical && same;
            fs::remove_all(a);
            fs::remove_all(b);
        }
        report(10, identical, detail);
    }

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
