#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "edagepp/dataset.hpp"
#include "edagepp/error.hpp"
#include "edagepp/extract.hpp"
#include "edagepp/planners.hpp"
#include "edagepp/pool.hpp"
#include "edagepp/scene.hpp"

namespace py = pybind11;
using namespace edagepp;

namespace {

using Array2 = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<std::uint8_t> mask_array(const RasterMask& m) {
  py::array_t<std::uint8_t> out({m.height, m.width});
  std::memcpy(out.mutable_data(), m.bits.data(), m.bits.size());
  return out;
}

py::array_t<double> points_array(const std::vector<Point2>& pts) {
  py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t(2)});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    v(i, 0) = pts[i].x;
    v(i, 1) = pts[i].y;
  }
  return out;
}

std::vector<Point2> points_from(const Array2& a) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw py::value_error("expected an (n, 2) array");
  auto v = a.unchecked<2>();
  std::vector<Point2> out;
  for (py::ssize_t i = 0; i < a.shape(0); ++i) out.push_back({v(i, 0), v(i, 1)});
  return out;
}

// rows of (x, y, radius)
std::vector<Obstacle> obstacles_from(const Array2& a) {
  if (a.size() == 0) return {};
  if (a.ndim() != 2 || a.shape(1) != 3) throw py::value_error("obstacles must be an (n, 3) array of x, y, radius");
  auto v = a.unchecked<2>();
  std::vector<Obstacle> out;
  for (py::ssize_t i = 0; i < a.shape(0); ++i) out.push_back(Obstacle{v(i, 2), {v(i, 0), v(i, 1)}});
  return out;
}

py::dict record_dict(const ProblemRecord& r) {
  py::array_t<std::uint8_t> img({r.problem_image.height, r.problem_image.width, 3});
  std::memcpy(img.mutable_data(), r.problem_image.data.data(), r.problem_image.data.size());
  py::array_t<double> obs({static_cast<py::ssize_t>(r.scene.obstacles.size()), py::ssize_t(3)});
  auto o = obs.mutable_unchecked<2>();
  for (std::size_t i = 0; i < r.scene.obstacles.size(); ++i) {
    o(i, 0) = r.scene.obstacles[i].center.x;
    o(i, 1) = r.scene.obstacles[i].center.y;
    o(i, 2) = r.scene.obstacles[i].radius;
  }
  py::dict d;
  d["id"] = r.id;
  d["seed"] = r.seed;
  d["clearance"] = r.scene.clearance;
  d["start"] = py::make_tuple(r.scene.start.x, r.scene.start.y);
  d["goal"] = py::make_tuple(r.scene.goal.x, r.scene.goal.y);
  d["obstacles"] = obs;
  d["waypoints"] = points_array(r.solution.points);
  d["solution_cost"] = r.solution_cost;
  d["problem_image"] = img;
  d["space_mask"] = mask_array(r.space_mask);
  d["waypoint_mask"] = mask_array(r.waypoint_mask);
  return d;
}

SceneSpec scene_from(std::pair<double, double> start, std::pair<double, double> goal, const Array2& obstacles,
                     double clearance, std::pair<double, double> bounds) {
  SceneSpec s;
  s.start = {start.first, start.second};
  s.goal = {goal.first, goal.second};
  s.obstacles = obstacles_from(obstacles);
  s.clearance = clearance;
  s.bounds = {bounds.first, bounds.second};
  return s;
}

GeneratorConfig generator_config(int paths, int per_path, std::uint64_t seed, double clearance) {
  GeneratorConfig cfg;
  cfg.paths = paths;
  cfg.per_path = per_path;
  cfg.seed = seed;
  cfg.scene.clearance = clearance;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_edagepp, m) {
  m.doc() = "Planning-problem generator, baseline planners and waypoint extraction";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<CorruptRecord>(m, "CorruptRecord", base.ptr());
  py::register_exception<DeadEnd>(m, "DeadEnd", base.ptr());
  py::register_exception<StepLimit>(m, "StepLimit", base.ptr());

  m.def(
      "generate_path_records",
      [](int path_index, int per_path, std::uint64_t seed, double clearance) {
        const GeneratorConfig cfg = generator_config(path_index + 1, per_path, seed, clearance);
        PathBatch b;
        {
          py::gil_scoped_release release;
          b = generate_path_records(cfg, path_index);
        }
        if (b.failure) throw GenerationFailed(*b.failure);
        py::list out;
        for (const ProblemRecord& r : b.records) out.append(record_dict(r));
        return out;
      },
      py::arg("path_index"), py::arg("per_path") = 4, py::arg("seed") = 42, py::arg("clearance") = 3.0,
      "Records generated from one path, as dicts of numpy arrays.");

  m.def(
      "write_dataset",
      [](const std::filesystem::path& out, int paths, int per_path, std::uint64_t seed, double clearance,
         int workers) {
        const GeneratorConfig cfg = generator_config(paths, per_path, seed, clearance);
        py::gil_scoped_release release;
        DatasetHeader h;
        h.raster = cfg.scene.raster;
        h.config = generator_config_json(cfg);
        DatasetWriter w(out, h);
        ordered_parallel<PathBatch>(
            std::size_t(paths), resolve_workers(workers),
            [&](std::size_t i) { return generate_path_records(cfg, int(i)); },
            [&](std::size_t, PathBatch b) {
              for (const ProblemRecord& r : b.records) w.write(r);
            });
        return w.count();
      },
      py::arg("out"), py::arg("paths"), py::arg("per_path") = 4, py::arg("seed") = 42, py::arg("clearance") = 3.0,
      py::arg("workers") = 0);

  m.def(
      "validate_dataset",
      [](const std::filesystem::path& dir, int max_obstacles) {
        ValidationReport rep;
        {
          py::gil_scoped_release release;
          rep = validate_dataset(dir, max_obstacles);
        }
        py::dict failed;
        for (const RecordCheck& c : rep.records)
          if (!c.pass) failed[py::int_(c.id)] = c.failed;
        py::dict d;
        d["records"] = rep.records.size();
        d["passed"] = rep.passed;
        d["failed"] = failed;
        return d;
      },
      py::arg("dir"), py::arg("max_obstacles") = 50);

  m.def(
      "gaussian_blur",
      [](const Array2& map, double sigma) {
        if (map.ndim() != 2) throw py::value_error("expected a 2-d array");
        ProbabilityMap pm(int(map.shape(1)), int(map.shape(0)));
        std::memcpy(pm.values.data(), map.data(), pm.values.size() * sizeof(double));
        const ProbabilityMap b = gaussian_blur(pm, sigma);
        py::array_t<double> out({b.height, b.width});
        std::memcpy(out.mutable_data(), b.values.data(), b.values.size() * sizeof(double));
        return out;
      },
      py::arg("map"), py::arg("sigma") = 1.0);

  m.def(
      "extract_waypoints",
      [](const Array2& map, std::pair<int, int> start, std::pair<int, int> goal, std::size_t max_steps) {
        if (map.ndim() != 2) throw py::value_error("expected a 2-d array");
        ProbabilityMap pm(int(map.shape(1)), int(map.shape(0)));
        std::memcpy(pm.values.data(), map.data(), pm.values.size() * sizeof(double));
        const auto px = extract_waypoints(pm, {start.first, start.second}, {goal.first, goal.second}, max_steps);
        std::vector<std::pair<int, int>> out;
        for (PixelCoord p : px) out.emplace_back(p.col, p.row);
        return out;
      },
      py::arg("map"), py::arg("start"), py::arg("goal"), py::arg("max_steps") = 100000,
      "Greedy walk over a probability map; pixels are (col, row).");

  m.def(
      "plan",
      [](const std::string& planner, std::pair<double, double> start, std::pair<double, double> goal,
         const Array2& obstacles, double clearance, long max_iterations, double max_time, std::uint64_t seed,
         std::pair<double, double> bounds) {
        const SceneSpec s = scene_from(start, goal, obstacles, clearance, bounds);
        PlannerConfig cfg;
        cfg.clearance = clearance;
        cfg.max_iterations = max_iterations;
        cfg.max_time = max_time;
        cfg.seed = seed;
        PlannerResult r;
        {
          py::gil_scoped_release release;
          r = run_planner(planner_kind_from_string(planner), s, cfg);
        }
        py::dict d;
        d["success"] = r.success;
        d["status"] = std::string(to_string(r.status));
        d["cost"] = r.cost;
        d["iterations"] = r.iterations;
        d["elapsed"] = r.elapsed;
        d["path"] = r.path ? py::object(points_array(*r.path)) : py::none();
        return d;
      },
      py::arg("planner"), py::arg("start"), py::arg("goal"), py::arg("obstacles"), py::arg("clearance") = 3.0,
      py::arg("max_iterations") = 5000, py::arg("max_time") = std::numeric_limits<double>::infinity(),
      py::arg("seed") = 0, py::arg("bounds") = std::pair<double, double>{64.0, 64.0});

  m.def(
      "grid_oracle",
      [](std::pair<double, double> start, std::pair<double, double> goal, const Array2& obstacles, double clearance,
         int resolution, std::pair<double, double> bounds) {
        const SceneSpec s = scene_from(start, goal, obstacles, clearance, bounds);
        py::gil_scoped_release release;
        return grid_dijkstra_oracle(s, clearance, resolution);
      },
      py::arg("start"), py::arg("goal"), py::arg("obstacles"), py::arg("clearance") = 3.0,
      py::arg("resolution") = 128, py::arg("bounds") = std::pair<double, double>{64.0, 64.0});

  m.def(
      "path_cost", [](const Array2& pts) { return path_cost(points_from(pts)); }, py::arg("points"));
}
