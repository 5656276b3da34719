#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sigman/configspace.hpp"
#include "sigman/energy.hpp"
#include "sigman/error.hpp"
#include "sigman/gaussian.hpp"
#include "sigman/graphembed.hpp"
#include "sigman/io.hpp"
#include "sigman/verify.hpp"

namespace py = pybind11;
using namespace sigman;

namespace {

// Python receives library objects as the same JSON documents the CLI reads
// and writes, so the formats stay in one place.
py::object to_py(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

io::json from_py(const py::object& o) {
  return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Signal energies, energy-bound checks and graph quasi-embeddings";

  static py::exception<Error> error(m, "SigmanError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "distance",
      [](const py::object& manifold, const AmbientPoint& x, const AmbientPoint& y, double p) {
        return distance(io::manifold_from_json(from_py(manifold)), x, y, p);
      },
      py::arg("manifold"), py::arg("x"), py::arg("y"), py::arg("p") = 2.0);

  m.def(
      "validate_point",
      [](const py::object& manifold, const AmbientPoint& x) {
        const auto v = validate_point(io::manifold_from_json(from_py(manifold)), x);
        return py::make_tuple(v.accepted, v.violated);
      },
      py::arg("manifold"), py::arg("x"));

  m.def(
      "curve_energy",
      [](const py::object& path) {
        return to_py(io::to_json(curve_energy(make_signal_curve(io::polyline_from_json(from_py(path))))));
      },
      py::arg("path"), "Energy report of a PolylinePath document.");

  m.def(
      "region_energy",
      [](const py::object& mesh_doc) {
        TriMesh mesh = io::mesh_from_json(from_py(mesh_doc));
        if (mesh.sources.empty() && mesh.a) mesh.sources = {*mesh.a};
        return to_py(io::to_json(region_energy(make_signal_region(std::move(mesh)))));
      },
      py::arg("mesh"), "Energy report of a TriMesh document measured from its sources (or a).");

  m.def(
      "rectangle_energy", [](double step) { return to_py(io::to_json(region_energy(top_edge_rectangle(step)))); },
      py::arg("step") = 0.01, "Rectangle [-1,1]x[0,1] measured from its top edge.");

  m.def(
      "triangulate_sphere", [](int subdivisions) { return to_py(io::to_json(triangulate_sphere(subdivisions))); },
      py::arg("subdivisions"));

  m.def(
      "mesh_area", [](const py::object& mesh) { return mesh_area(io::mesh_from_json(from_py(mesh))).area; },
      py::arg("mesh"));

  m.def(
      "mesh_diameter", [](const py::object& mesh) { return mesh_diameter(io::mesh_from_json(from_py(mesh))); },
      py::arg("mesh"));

  m.def(
      "fisher_metric",
      [](double mu, double sigma, std::size_t quad) {
        return to_py(io::to_json(fisher_metric_numeric(mu, sigma, quad), mu, sigma, quad));
      },
      py::arg("mu") = 0.0, py::arg("sigma") = 1.0, py::arg("quad") = 401);

  m.def(
      "gaussian_bound",
      [](const py::object& path) {
        return to_py(io::to_json(check_gaussian_lower_bound(io::polyline_from_json(from_py(path)))));
      },
      py::arg("path"));

  m.def(
      "random_gaussian_path",
      [](std::size_t n, std::uint64_t seed, std::size_t steps) {
        return to_py(io::to_json(random_gaussian_path(n, seed, steps)));
      },
      py::arg("n"), py::arg("seed"), py::arg("steps"));

  m.def(
      "config_bounds",
      [](const py::object& path, bool check_lower) {
        return to_py(io::to_json(check_config_bounds(io::config_path_from_json(from_py(path)), check_lower)));
      },
      py::arg("path"), py::arg("check_lower") = true);

  m.def(
      "random_config_path",
      [](const py::object& manifold, std::size_t n, std::uint64_t seed, std::size_t steps, bool monotone) {
        return to_py(io::to_json(
            random_config_path(io::manifold_from_json(from_py(manifold)), n, seed, steps, monotone)));
      },
      py::arg("manifold"), py::arg("n"), py::arg("seed"), py::arg("steps"), py::arg("monotone") = false);

  m.def(
      "ratio_variance", [](const std::vector<double>& r) { return ratio_variance(r); }, py::arg("ratios"));

  m.def(
      "relative_ratio_variance",
      [](const py::object& graph, const py::object& manifold, std::vector<AmbientPoint> points) {
        const auto g = io::graph_from_json(from_py(graph));
        return relative_ratio_variance(g, make_configuration(io::manifold_from_json(from_py(manifold)), std::move(points)));
      },
      py::arg("graph"), py::arg("manifold"), py::arg("points"));

  m.def(
      "embed",
      [](const py::object& graph, const py::object& manifold, std::uint64_t seed, std::size_t restarts,
         std::size_t max_iters, bool annealing) {
        EmbedOptions opts;
        opts.seed = seed;
        opts.restarts = restarts;
        opts.max_iters = max_iters;
        opts.annealing = annealing;
        const auto g = io::graph_from_json(from_py(graph));
        const auto man = io::manifold_from_json(from_py(manifold));
        EmbedResult result;
        {
          py::gil_scoped_release release;
          result = minimize_ratio_variance(g, man, opts);
        }
        return to_py(io::to_json(result));
      },
      py::arg("graph"), py::arg("manifold"), py::arg("seed") = 7, py::arg("restarts") = 20,
      py::arg("max_iters") = 3000, py::arg("annealing") = false);

  m.def(
      "verify_all",
      [](std::uint64_t seed, std::size_t samples) {
        VerifyOptions opts;
        opts.seed = seed;
        opts.curves = opts.gaussian_paths = opts.config_paths = opts.scale_configs = samples;
        std::vector<SuiteResult> suites;
        {
          py::gil_scoped_release release;
          suites = verify_all(opts);
        }
        py::dict out;
        for (const auto& s : suites) {
          py::dict d;
          d["passed"] = s.passed;
          d["total"] = s.total;
          d["ok"] = s.ok;
          for (const auto& [k, v] : s.counts) d[py::str(k)] = v;
          for (const auto& [k, v] : s.extremes) d[py::str(k)] = v;
          out[py::str(s.name)] = d;
        }
        return out;
      },
      py::arg("seed") = 42, py::arg("samples") = 1000);
}
