#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "randattr/experiment.hpp"

namespace py = pybind11;
using namespace randattr;

PYBIND11_MODULE(_core, m) {
    m.doc() = "random dynamical systems: drivers, cocycles, attractor constructions";

    py::register_exception<config_error>(m, "ConfigError");
    py::register_exception<divergence_error>(m, "DivergenceError");
    py::register_exception<schedule_infeasible_error>(m, "ScheduleInfeasibleError");
    py::register_exception<weak_unstable_error>(m, "WeakUnstableError");

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def_static("uniform", &NoiseSpec::uniform, py::arg("a"), py::arg("b"), py::arg("k") = 1)
        .def_static("gaussian", &NoiseSpec::gaussian, py::arg("mu"), py::arg("sigma"),
                    py::arg("k") = 1)
        .def_static("discrete", &NoiseSpec::discrete, py::arg("values"), py::arg("probs"),
                    py::arg("k") = 1)
        .def_readonly("increments_per_step", &NoiseSpec::increments_per_step);

    py::class_<DriverPath>(m, "DriverPath")
        .def_readonly("seed", &DriverPath::seed)
        .def_readonly("offset", &DriverPath::offset)
        .def_readonly("spec", &DriverPath::spec);

    m.def("make_driver", &make_driver);
    m.def("shift", &shift);
    m.def("increment", &increment);
    m.def("stationarity_check",
          [](const NoiseSpec& spec, int seeds, std::int64_t window) {
              auto rep = stationarity_check(spec, seeds, window);
              return py::make_tuple(rep.statistic, rep.critical, rep.pass);
          });

    py::class_<Box>(m, "Box")
        .def(py::init([](Vec lo, Vec hi) {
            Box b{std::move(lo), std::move(hi)};
            b.validate();
            return b;
        }))
        .def_readonly("lower", &Box::lower)
        .def_readonly("upper", &Box::upper)
        .def("dist_to", &Box::dist_to)
        .def("inflated", &Box::inflated);

    py::class_<PointCloud>(m, "PointCloud")
        .def(py::init([](std::vector<Vec> pts, double res) {
                 PointCloud c{std::move(pts), res, ""};
                 c.validate();
                 return c;
             }),
             py::arg("points"), py::arg("resolution") = 0.0)
        .def_readonly("points", &PointCloud::points)
        .def_readonly("resolution", &PointCloud::resolution);

    m.def("semidist", &semidist);
    m.def("hausdorff", &hausdorff);
    m.def("fit_compact", &fit_compact);
    m.def("prune", &prune);
    m.def("sample_box", &sample_box);
    m.def("sample_ball", &sample_ball);

    py::class_<SystemSpec>(m, "SystemSpec")
        .def_readonly("name", &SystemSpec::name)
        .def_readonly("dimension", &SystemSpec::dimension)
        .def_readonly("noise", &SystemSpec::noise);

    m.def("make_affine", [](py::object a, py::object b) {
        auto coef = [](py::object o) -> CoefSpec {
            if (py::isinstance<NoiseSpec>(o)) return o.cast<NoiseSpec>();
            return o.cast<double>();
        };
        return make_affine(coef(a), coef(b));
    });
    m.def("make_logistic", &make_logistic);
    m.def("make_double_well", &make_double_well, py::arg("step_size"), py::arg("noise_scale"),
          py::arg("box_half") = 3.0);
    m.def("make_contraction", &make_contraction, py::arg("rate"), py::arg("dim") = 1);
    m.def("make_rotation", &make_rotation);
    m.def("zoo_names", &zoo_names);

    m.def("evolve", &evolve);
    m.def("pullback", &pullback);
    m.def("forward_image", &forward_image);
    m.def("cocycle_residual", &cocycle_residual);

    py::class_<OmegaConfig>(m, "OmegaConfig")
        .def(py::init<>())
        .def_readwrite("t_min", &OmegaConfig::t_min)
        .def_readwrite("t_max", &OmegaConfig::t_max)
        .def_readwrite("stride", &OmegaConfig::stride)
        .def_readwrite("sample_density", &OmegaConfig::sample_density)
        .def_readwrite("prune_eps", &OmegaConfig::prune_eps);

    m.def("omega_limit", &omega_limit);
    m.def("build_strong_b", [](const SystemSpec& sys, const DriverPath& omega, int k_max,
                               const OmegaConfig& cfg, Vec x0) {
        auto res = build_strong_B(sys, omega, k_max, cfg, x0);
        return py::make_tuple(res.attractor, res.increments, res.saturated);
    });

    m.def("run_config", [](const std::string& config_path, const std::string& out_dir,
                           int workers) {
        ExperimentConfig cfg = parse_config(json::parse(read_file(config_path)));
        return run_experiment(cfg, out_dir, workers);
    });
}
