#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ledloc/aoa.hpp"
#include "ledloc/config.hpp"
#include "ledloc/error_analysis.hpp"
#include "ledloc/errors.hpp"
#include "ledloc/heatmap.hpp"
#include "ledloc/localizer.hpp"
#include "ledloc/mc.hpp"
#include "ledloc/scene.hpp"
#include "ledloc/sweep_io.hpp"

namespace py = pybind11;

namespace {

using namespace ledloc;

Vec3 to_vec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) {
    throw py::value_error(std::string(what) + ": expected 3 components");
  }
  return {v[0], v[1], v[2]};
}

std::vector<double> from_vec3(const Vec3& v) {
  return {v.x(), v.y(), v.z()};
}

std::vector<std::vector<double>> from_mat3(const Mat3& m) {
  std::vector<std::vector<double>> rows;
  for (int r = 0; r < 3; ++r) {
    rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  }
  return rows;
}

std::vector<std::vector<double>> from_mat4x3(const Mat4x3& m) {
  std::vector<std::vector<double>> rows;
  for (int r = 0; r < 4; ++r) {
    rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Beacon-LED localization: Lambertian channel model, four-PD "
      "angle-of-arrival estimation, two-ray triangulation, closed-form "
      "error analysis and Monte Carlo validation.";
#ifdef LEDLOC_VERSION
  m.attr("__version__") = LEDLOC_VERSION;
#else
  m.attr("__version__") = "dev";
#endif

  // Every library failure surfaces as this one exception type.
  py::register_exception<Error>(m, "Error");

  py::class_<OpticalParams>(m, "OpticalParams")
      .def(py::init<>())
      .def_readwrite("transmit_power_lm", &OpticalParams::transmit_power_lm)
      .def_readwrite("lambertian_order", &OpticalParams::lambertian_order)
      .def_readwrite("pd_area_m2", &OpticalParams::pd_area_m2)
      .def_readwrite("responsivity_A_per_lux",
                     &OpticalParams::responsivity_A_per_lux);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def_readwrite("const_coeff_A2", &NoiseModel::const_coeff_A2)
      .def_readwrite("linear_coeff_A", &NoiseModel::linear_coeff_A)
      .def_static("off", &NoiseModel::off);

  py::class_<RoomBounds>(m, "RoomBounds")
      .def(py::init<>())
      .def_readwrite("x_min", &RoomBounds::x_min)
      .def_readwrite("x_max", &RoomBounds::x_max)
      .def_readwrite("y_min", &RoomBounds::y_min)
      .def_readwrite("y_max", &RoomBounds::y_max)
      .def_readwrite("z_min", &RoomBounds::z_min)
      .def_readwrite("z_max", &RoomBounds::z_max);

  py::class_<SceneConfig>(m, "SceneConfig")
      .def(py::init<>())
      .def_readwrite("room", &SceneConfig::room)
      .def_readwrite("led_height", &SceneConfig::led_height)
      .def_property(
          "led_normal",
          [](const SceneConfig& s) { return from_vec3(s.led_normal); },
          [](SceneConfig& s, const std::vector<double>& v) {
            s.led_normal = to_vec3(v, "led_normal");
          })
      .def_property(
          "estimator1_position",
          [](const SceneConfig& s) { return from_vec3(s.estimator1_pos); },
          [](SceneConfig& s, const std::vector<double>& v) {
            s.estimator1_pos = to_vec3(v, "estimator1_position");
          })
      .def_property(
          "estimator2_position",
          [](const SceneConfig& s) { return from_vec3(s.estimator2_pos); },
          [](SceneConfig& s, const std::vector<double>& v) {
            s.estimator2_pos = to_vec3(v, "estimator2_position");
          })
      .def_readwrite("optics", &SceneConfig::optics)
      .def_readwrite("noise", &SceneConfig::noise)
      .def_readwrite("degeneracy_threshold", &SceneConfig::degeneracy_threshold)
      .def_readwrite("min_separation", &SceneConfig::min_separation)
      .def_readwrite("clip_negative_currents",
                     &SceneConfig::clip_negative_currents)
      .def("validate", &SceneConfig::validate);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("x_min", &GridSpec::x_min)
      .def_readwrite("x_max", &GridSpec::x_max)
      .def_readwrite("y_min", &GridSpec::y_min)
      .def_readwrite("y_max", &GridSpec::y_max)
      .def_readwrite("step", &GridSpec::step)
      .def_property_readonly("nx", &GridSpec::nx)
      .def_property_readonly("ny", &GridSpec::ny);

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("scene", &ExperimentSpec::scene)
      .def_readwrite("grid", &ExperimentSpec::grid)
      .def_readwrite("trials_per_point", &ExperimentSpec::trials_per_point)
      .def_readwrite("seed", &ExperimentSpec::seed)
      .def("validate", &ExperimentSpec::validate);

  py::class_<PointRecord>(m, "PointRecord")
      .def_readonly("x", &PointRecord::x)
      .def_readonly("y", &PointRecord::y)
      .def_readonly("eps_theory", &PointRecord::eps_theory)
      .def_readonly("eps_mc", &PointRecord::eps_mc)
      .def_readonly("mc_std_err", &PointRecord::mc_std_err)
      .def_readonly("degenerate_trials", &PointRecord::degenerate_trials)
      .def("__repr__", [](const PointRecord& r) {
        return "PointRecord(x=" + std::to_string(r.x) +
               ", y=" + std::to_string(r.y) + ")";
      });

  py::class_<GridSweepResult>(m, "GridSweepResult")
      .def_readonly("grid", &GridSweepResult::grid)
      .def_readonly("records", &GridSweepResult::records)
      .def("all_points_ok", &GridSweepResult::all_points_ok);

  m.def("fig3_preset", &fig3_preset,
        "Wide head placement: estimators at (0,2,0) and (4,2,0).");
  m.def("fig4_preset", &fig4_preset,
        "Narrow head placement: estimators at (1.5,2,0) and (2.5,2,0).");

  m.def(
      "optimal_normals", [] { return from_mat4x3(optimal_normals()); },
      "The four error-power-optimal PD orientation rows.");

  m.def(
      "triangulate",
      [](const std::vector<double>& a1, const std::vector<double>& a2,
         const std::vector<double>& r1, const std::vector<double>& r2) {
        const TriangulationResult res =
            triangulate({to_vec3(a1, "a1"), to_vec3(a2, "a2"),
                         to_vec3(r1, "r1"), to_vec3(r2, "r2")});
        return py::make_tuple(from_vec3(res.t_hat), res.d1, res.d2);
      },
      py::arg("a1"), py::arg("a2"), py::arg("r1"), py::arg("r2"),
      "Least-squares two-ray intersection; returns (t_hat, d1, d2).");

  m.def(
      "theoretical_error_at",
      [](const SceneConfig& scene, double x, double y) {
        const ErrorReport rep = theoretical_error_at(scene, scene.led_at(x, y));
        return py::make_tuple(rep.e_ps, from_mat3(rep.covariance));
      },
      py::arg("scene"), py::arg("x"), py::arg("y"),
      "Closed-form RMS position error; returns (e_ps, covariance).");

  m.def(
      "empirical_eps",
      [](const SceneConfig& scene, double x, double y, int trials,
         std::uint64_t seed) {
        const EmpiricalError emp = empirical_eps(scene, scene.led_at(x, y),
                                                 trials, RngStream(seed));
        return py::make_tuple(emp.e_ps, emp.std_err, emp.degenerate_trials);
      },
      py::arg("scene"), py::arg("x"), py::arg("y"), py::arg("trials"),
      py::arg("seed"),
      "Monte Carlo RMS position error; returns (e_ps, std_err, degenerate).");

  m.def(
      "run_trial",
      [](const SceneConfig& scene, double x, double y, std::uint64_t seed) {
        RngStream rng{seed};
        return from_vec3(run_trial(scene, scene.led_at(x, y), rng));
      },
      py::arg("scene"), py::arg("x"), py::arg("y"), py::arg("seed"),
      "One noisy end-to-end position estimate.");

  m.def("sweep", &sweep, py::arg("spec"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Full grid sweep (theory + Monte Carlo at every point).");

  m.def("parse_config", &parse_config, py::arg("text"),
        "Parse and validate a key = value configuration.");
  m.def("write_config", &write_config, py::arg("spec"),
        "Render a configuration back to its file format.");
  m.def("sweep_csv", &sweep_csv, py::arg("result"),
        "Sweep result in the pinned CSV schema.");
  m.def("parse_sweep_csv", &parse_sweep_csv, py::arg("text"),
        "Parse a sweep CSV back into a result.");
  m.def(
      "render_heatmap_svg",
      [](const GridSweepResult& result, bool mark_estimators, double est1_x,
         double est1_y, double est2_x, double est2_y) {
        HeatmapOptions options;
        options.mark_estimators = mark_estimators;
        options.est1_x = est1_x;
        options.est1_y = est1_y;
        options.est2_x = est2_x;
        options.est2_y = est2_y;
        return render_heatmap_svg(result, options);
      },
      py::arg("result"), py::arg("mark_estimators") = false,
      py::arg("est1_x") = 0.0, py::arg("est1_y") = 0.0,
      py::arg("est2_x") = 0.0, py::arg("est2_y") = 0.0,
      "Two-panel SVG heatmap of a sweep result.");
}
