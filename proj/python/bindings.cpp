#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obscbf/barrier.hpp"
#include "obscbf/cli.hpp"
#include "obscbf/fat.hpp"
#include "obscbf/observer.hpp"
#include "obscbf/plot.hpp"
#include "obscbf/presets.hpp"
#include "obscbf/qp.hpp"
#include "obscbf/simloop.hpp"
#include "obscbf/trace_io.hpp"

namespace py = pybind11;
using namespace obscbf;

namespace {

py::dict report_dict(const SafetyReport& r) {
    py::dict d;
    d["min_h_true"] = r.min_h_true;
    d["min_h0"] = r.min_h0;
    d["first_violation_t"] = r.first_violation_t ? py::object(py::float_(*r.first_violation_t)) : py::none();
    d["bound_violations"] = r.bound_violations;
    d["infeasible_steps"] = r.infeasible_steps;
    d["epsilon_bound"] = r.epsilon_bound;
    d["epsilon_used"] = r.epsilon_used;
    d["epsilon_ok"] = r.epsilon_ok;
    return d;
}

SimTrace run_with(const ExperimentPreset& e, Controller c) {
    SimConfig cfg = e.cfg;
    cfg.controller = c;
    return run_simulation(cfg);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Observer-based adaptive control barrier function simulator (C++ core).";

    py::enum_<Controller>(m, "Controller")
        .value("proposed", Controller::proposed)
        .value("baseline", Controller::baseline);

    py::class_<ErrorBoundModel>(m, "ErrorBoundModel")
        .def_static("exponential", &ErrorBoundModel::exponential, py::arg("D"), py::arg("lam"))
        .def_static("constant", &ErrorBoundModel::constant, py::arg("beta"))
        .def("value", &ErrorBoundModel::value)
        .def("derivative", &ErrorBoundModel::derivative);

    m.def("error_bound", &error_bound, py::arg("model"), py::arg("t"));
    m.def("interval_bound", &interval_bound, py::arg("upper"), py::arg("lower"));
    m.def("basis", &basis, py::arg("i"), py::arg("omega"), py::arg("t"));

    py::class_<QpResult>(m, "QpResult")
        .def_readonly("u", &QpResult::u)
        .def_readonly("active", &QpResult::active)
        .def_readonly("feasible", &QpResult::feasible);
    m.def(
        "solve_halfspace_qp",
        [](const Eigen::VectorXd& u_d, const Eigen::VectorXd& a, double b) {
            return solve_halfspace_qp(u_d, ConstraintCoeffs{a, b});
        },
        py::arg("u_d"), py::arg("a"), py::arg("b"));
    m.def(
        "solve_boxed_qp",
        [](const Eigen::VectorXd& u_d, const Eigen::VectorXd& a, double b, const Eigen::VectorXd& lo,
           const Eigen::VectorXd& hi) { return solve_boxed_qp(u_d, ConstraintCoeffs{a, b}, lo, hi); },
        py::arg("u_d"), py::arg("a"), py::arg("b"), py::arg("lo"), py::arg("hi"));

    py::class_<SimTrace>(m, "Trace")
        .def_property_readonly("n", [](const SimTrace& t) { return t.n; })
        .def_property_readonly("m", [](const SimTrace& t) { return t.m; })
        .def("__len__", [](const SimTrace& t) { return t.samples.size(); })
        .def("columns", &csv_columns)
        .def("column",
             [](const SimTrace& t, const std::string& name) {
                 const auto v = column_values(t, name);
                 return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
             })
        .def("to_csv", &emit_csv);

    py::class_<ExperimentPreset>(m, "Experiment")
        .def_readonly("name", &ExperimentPreset::name)
        .def_property_readonly("epsilon", [](const ExperimentPreset& e) { return e.cfg.adaptive0.epsilon; })
        .def_property_readonly("mu", [](const ExperimentPreset& e) { return e.cfg.adaptive0.mu; })
        .def_property_readonly("x0", [](const ExperimentPreset& e) { return e.cfg.x0; })
        .def_property_readonly("xhat0", [](const ExperimentPreset& e) { return e.cfg.xhat0; })
        .def_property_readonly("dt", [](const ExperimentPreset& e) { return e.cfg.dt; })
        .def_property_readonly("t_end", [](const ExperimentPreset& e) { return e.cfg.t_end; })
        .def("epsilon_bound", [](const ExperimentPreset& e) { return epsilon_bound(e.cfg); })
        .def("feasibility_text", &format_feasibility)
        .def("run", &run_with, py::arg("controller") = Controller::proposed,
             py::call_guard<py::gil_scoped_release>())
        .def("run_pair", [](const ExperimentPreset& e) { return run_pair(e.cfg); },
             py::call_guard<py::gil_scoped_release>())
        .def("safety_report", [](const ExperimentPreset& e, const SimTrace& t) {
            return report_dict(safety_report(t, e.cfg));
        });

    m.def("preset_names", &preset_names);
    m.def("make_preset", [](const std::string& name) { return make_preset(name); }, py::arg("name"));
    m.def("parse_config", &parse_experiment, py::arg("text"));

    m.def(
        "emit_plot",
        [](const std::vector<std::pair<std::string, const SimTrace*>>& series, const std::string& quantity) {
            std::vector<LabeledTrace> lt;
            for (const auto& [label, tr] : series) lt.push_back({label, std::cref(*tr)});
            return emit_plot(lt, quantity);
        },
        py::arg("series"), py::arg("quantity"));

    m.def(
        "_run_preset",
        [](const std::string& name, const std::string& overrides_json, const std::string& out_dir) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run_preset(name, nlohmann::json::parse(overrides_json), out_dir, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("name"), py::arg("overrides_json"), py::arg("out_dir"));
}
