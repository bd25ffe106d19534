#include "cheeger/consistency.hpp"
#include "cheeger/cut_solvers.hpp"
#include "cheeger/error.hpp"
#include "cheeger/harness.hpp"
#include "cheeger/io.hpp"
#include "cheeger/manifold.hpp"
#include "cheeger/nonlocal_tv.hpp"
#include "cheeger/proximity_graph.hpp"
#include "cheeger/quadrature.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cheeger;

namespace {

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::array_t<double> points_array(const PointCloud& c) {
  const auto d = static_cast<py::ssize_t>(c.ambient_dim);
  py::array_t<double> out({static_cast<py::ssize_t>(c.size()), d});
  auto a = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (py::ssize_t k = 0; k < d; ++k) a(i, k) = c.points[i][k];
  }
  return out;
}

PointCloud cloud_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> pts,
                            int intrinsic_dim) {
  if (pts.ndim() != 2 || pts.shape(1) < 1 || pts.shape(1) > 4) {
    throw Error(ErrorCode::Config, "points must be an (n, d) array with 1 <= d <= 4");
  }
  auto a = pts.unchecked<2>();
  std::vector<Point> points(a.shape(0), Point{});
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    for (py::ssize_t k = 0; k < a.shape(1); ++k) points[i][k] = a(i, k);
  }
  return cloud_from_points(std::move(points), static_cast<int>(pts.shape(1)), intrinsic_dim);
}

py::object result_dict(const CutResult& r) {
  return to_python(to_json(r));
}

SolverKind solver_from_name(const std::string& name) {
  if (name == "exact") return SolverKind::Exact;
  if (name == "arc") return SolverKind::ArcSweep;
  if (name == "spectral") return SolverKind::SpectralSweep;
  if (name == "pipeline") return SolverKind::Pipeline;
  throw Error(ErrorCode::Config, "unknown method '" + name + "' (exact, arc, spectral, pipeline)");
}

ExperimentConfig config_from_dict(const py::dict& d) {
  const std::string text = py::str(py::module_::import("json").attr("dumps")(d));
  auto v = validate_config_text(text);
  if (!v.ok()) {
    std::string msg = "invalid config:";
    for (const auto& e : v.errors) msg += "\n  " + e;
    throw Error(ErrorCode::Config, msg);
  }
  return *v.config;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Graph and continuum Cheeger cuts on sampled manifolds";

  py::register_exception<Error>(mod, "CheegerError", PyExc_RuntimeError);

  py::class_<Manifold>(mod, "Manifold")
      .def(py::init([](const std::string& name) { return Manifold::from_name(name); }), py::arg("name"))
      .def_property_readonly("name", [](const Manifold& m) { return std::string(m.name()); })
      .def_property_readonly("intrinsic_dim", &Manifold::intrinsic_dim)
      .def_property_readonly("ambient_dim", &Manifold::ambient_dim)
      .def("ball_volume", &Manifold::ball_volume)
      .def("__repr__", [](const Manifold& m) { return "Manifold('" + std::string(m.name()) + "')"; });

  py::class_<PointCloud>(mod, "PointCloud")
      .def_property_readonly("points", &points_array)
      .def_property_readonly("seed", [](const PointCloud& c) { return c.seed; })
      .def_property_readonly("intrinsic_dim", [](const PointCloud& c) { return c.intrinsic_dim; })
      .def("__len__", &PointCloud::size);

  py::class_<ProximityGraph>(mod, "ProximityGraph")
      .def_property_readonly("n", &ProximityGraph::size)
      .def_property_readonly("epsilon", &ProximityGraph::epsilon)
      .def_property_readonly("edge_count", &ProximityGraph::edge_count)
      .def("neighbors", [](const ProximityGraph& g, std::size_t i) {
        if (i >= g.size()) throw py::index_error("node out of range");
        auto s = g.neighbors(i);
        return std::vector<int>(s.begin(), s.end());
      })
      .def("degree", &ProximityGraph::degree)
      .def("__len__", &ProximityGraph::size);

  mod.def("sample", [](const std::string& manifold, std::size_t n, std::uint64_t seed) {
    return sample(Manifold::from_name(manifold), n, seed);
  }, py::arg("manifold"), py::arg("n"), py::arg("seed") = 0);

  mod.def("cloud_from_points", &cloud_from_array, py::arg("points"), py::arg("intrinsic_dim"));

  mod.def("build_graph", &build_graph, py::arg("cloud"), py::arg("epsilon"));

  mod.def("gtv", [](const ProximityGraph& g, const std::vector<double>& u) {
    if (u.size() != g.size()) throw Error(ErrorCode::Config, "u must have one value per node");
    return gtv(g, u);
  }, py::arg("graph"), py::arg("u"));

  mod.def("cut_and_balance", [](const ProximityGraph& g, const std::vector<int>& subset) {
    const auto cb = cut_and_balance(g, subset);
    py::dict d;
    d["gtv"] = cb.gtv;
    d["balance"] = cb.balance;
    d["cut"] = cb.cut;
    d["size"] = cb.size;
    return d;
  }, py::arg("graph"), py::arg("subset"));

  mod.def("solve", [](const ProximityGraph& g, const std::string& objective, double gamma,
                      const std::string& method, std::uint64_t seed, const PointCloud* cloud) {
    const auto o = objective_from_name(objective, gamma);
    PipelineOptions opts;
    opts.spectral.seed = seed;
    switch (solver_from_name(method)) {
      case SolverKind::Exact: return result_dict(solve_exact(g, o));
      case SolverKind::ArcSweep:
        if (!cloud) throw Error(ErrorCode::Config, "the arc method needs the point cloud");
        return result_dict(solve_arc_sweep(g, *cloud, o));
      case SolverKind::SpectralSweep: return result_dict(solve_spectral_sweep(g, o, opts.spectral));
      default: return result_dict(solve_pipeline(g, o, opts, cloud));
    }
  }, py::arg("graph"), py::arg("objective") = "cheeger", py::arg("gamma") = 0.0,
     py::arg("method") = "pipeline", py::arg("seed") = 0x5eed, py::arg("cloud") = nullptr);

  mod.def("surface_tension", &surface_tension, py::arg("m"));

  mod.def("continuum_cheeger", [](const std::string& manifold) {
    return continuum_cheeger(Manifold::from_name(manifold)).constant();
  }, py::arg("manifold"));

  mod.def("tv_nonlocal_reference", [](const std::string& manifold, double h, int resolution) {
    const auto m = Manifold::from_name(manifold);
    const auto ref = continuum_cheeger(m);
    const auto grid = QuadratureGrid::with_resolution(m, resolution);
    return tv_nonlocal(ContinuumFunction::indicator(m, ref.canonical_member()), h, grid);
  }, py::arg("manifold"), py::arg("h"), py::arg("resolution") = 256,
     "Non-local TV_h of the indicator of the canonical Cheeger set.");

  mod.def("fit_rate", [](const std::map<double, std::vector<double>>& errors, std::uint64_t seed) {
    const auto r = fit_rate(errors, seed);
    py::dict d;
    d["n"] = r.n_values;
    d["medians"] = r.medians;
    d["slope"] = r.slope;
    d["intercept"] = r.intercept;
    d["ci"] = py::make_tuple(r.ci_low, r.ci_high);
    d["bootstrap"] = r.bootstrap;
    return d;
  }, py::arg("errors"), py::arg("seed") = 1);

  mod.def("validate_config", [](const py::dict& d) {
    const std::string text = py::str(py::module_::import("json").attr("dumps")(d));
    const auto v = validate_config_text(text);
    py::dict out;
    out["ok"] = v.ok();
    out["errors"] = v.errors;
    out["resolved"] = v.ok() ? to_python(v.resolved) : py::none();
    return out;
  }, py::arg("config"));

  mod.def("run_experiment", [](const py::dict& d, int workers) {
    const auto config = config_from_dict(d);
    ExperimentOutcome out;
    {
      py::gil_scoped_release release;
      out = run_experiment(config, {workers, 0});
    }
    py::dict r;
    r["digest"] = out.digest;
    r["reused"] = out.reused;
    r["failed"] = out.failed;
    r["rates"] = to_python(out.rates);
    py::list records;
    for (const auto& rec : out.records) records.append(to_python(to_json(rec, false)));
    r["records"] = records;
    return r;
  }, py::arg("config"), py::arg("workers") = 1);
}
