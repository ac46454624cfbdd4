#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gridmob/coverage.hpp"
#include "gridmob/degree_map.hpp"
#include "gridmob/distribution.hpp"
#include "gridmob/error.hpp"
#include "gridmob/grid_env.hpp"
#include "gridmob/monte_carlo.hpp"
#include "gridmob/path_count.hpp"

namespace py = pybind11;
using namespace gridmob;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::int_ to_int(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

NodeIndex index_for(const GridEnvironment& env, std::pair<int, int> node) {
  return env.require_index({node.first, node.second});
}

// Per-node values laid out as a rows x cols matrix (row 0 at y = 0); removed
// nodes are 0.
py::array_t<double> to_grid(const GridEnvironment& env, const std::vector<double>& values) {
  py::array_t<double> out({env.rows(), env.cols()});
  auto m = out.mutable_unchecked<2>();
  for (int r = 0; r < env.rows(); ++r) {
    for (int c = 0; c < env.cols(); ++c) m(r, c) = 0.0;
  }
  for (NodeIndex i = 0; i < env.node_count(); ++i) {
    NodeId id = env.node(i);
    m(id.row, id.col) = values[i];
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_gridmob, m) {
  m.doc() = "Shortest-path mobility on obstacle grids: presence, coverage and degree";

  static py::exception<Error> error_type(m, "GridmobError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, e.what());
    }
  });

  py::class_<GridEnvironment>(m, "Environment")
      .def_property_readonly("cols", &GridEnvironment::cols)
      .def_property_readonly("rows", &GridEnvironment::rows)
      .def_property_readonly("node_count", &GridEnvironment::node_count)
      .def_property_readonly("edge_count", &GridEnvironment::edge_count)
      .def_property_readonly("radio_range", &GridEnvironment::radio_range)
      .def_property_readonly("station_count", &GridEnvironment::station_count)
      .def("nodes",
           [](const GridEnvironment& env) {
             std::vector<std::pair<int, int>> out;
             for (NodeIndex i = 0; i < env.node_count(); ++i) out.emplace_back(env.node(i).col, env.node(i).row);
             return out;
           },
           "Free nodes as (col, row) in index order")
      .def("position",
           [](const GridEnvironment& env, std::pair<int, int> node) {
             Point p = env.position(NodeId{node.first, node.second});
             return std::pair{p.x, p.y};
           })
      .def("is_free", [](const GridEnvironment& env, std::pair<int, int> node) {
        return env.is_free({node.first, node.second});
      })
      .def("to_grid", &to_grid, py::arg("values"),
           "Arrange per-node values as a rows x cols array (row 0 at y = 0)");

  m.def("load_environment",
        [](const std::string& path) { return build_environment(load_config(path)); },
        py::arg("path"));
  m.def("parse_environment",
        [](const std::string& text) { return build_environment(parse_config(text)); },
        py::arg("json_text"));

  m.def("path_count",
        [](const GridEnvironment& env, std::pair<int, int> s, std::pair<int, int> t) {
          return to_int(through_counts(single_source_dag(env, index_for(env, s)), index_for(env, t)).path_count);
        },
        py::arg("env"), py::arg("source"), py::arg("target"), "Number of shortest paths (exact)");
  m.def("through_counts",
        [](const GridEnvironment& env, std::pair<int, int> s, std::pair<int, int> t) {
          auto counts = through_counts(single_source_dag(env, index_for(env, s)), index_for(env, t));
          py::list out;
          for (const auto& z : counts.tag2) out.append(to_int(z));
          return out;
        },
        py::arg("env"), py::arg("source"), py::arg("target"),
        "Shortest source-target paths through every free node (exact)");

  m.def("distribution",
        [](const GridEnvironment& env, const std::string& mode, bool reference, unsigned threads) {
          AggregationOptions opts{parse_aggregation_mode(mode), false, threads};
          py::gil_scoped_release release;
          auto d = reference ? aggregate_distribution(env, opts) : aggregate_fast(env, opts);
          py::gil_scoped_acquire acquire;
          return to_array(d.node);
        },
        py::arg("env"), py::arg("mode") = "per-trip", py::arg("reference") = false,
        py::arg("threads") = 1);

  m.def("coverage",
        [](const GridEnvironment& env, int rays, unsigned threads) {
          CoverageMap cov;
          {
            py::gil_scoped_release release;
            cov = coverage_map(env, env.radio_range(), rays, threads);
          }
          return to_array(cov.area);
        },
        py::arg("env"), py::arg("rays") = kDefaultRays, py::arg("threads") = 1);
  m.def("coverage_zone6",
        [](double x, double y, double r, bool horizontal) {
          return coverage_zone6(x, y, r,
                                horizontal ? Zone6Branch::BesideHorizontalFace : Zone6Branch::BesideVerticalFace);
        },
        py::arg("x"), py::arg("y"), py::arg("r"), py::arg("horizontal_face") = false);

  m.def("degree",
        [](const GridEnvironment& env, const std::string& mode, int rays, bool exclude_self,
           unsigned threads) {
          DegreeMap deg;
          {
            py::gil_scoped_release release;
            auto dist = aggregate_fast(env, {parse_aggregation_mode(mode), false, threads});
            auto cov = coverage_map(env, env.radio_range(), rays, threads);
            deg = compose_degree_map(env, dist, cov, {exclude_self});
          }
          return py::make_tuple(to_array(deg.degree), deg.global_mean);
        },
        py::arg("env"), py::arg("mode") = "per-trip", py::arg("rays") = kDefaultRays,
        py::arg("exclude_self") = false, py::arg("threads") = 1,
        "Per-node mean degree and the global mean degree");

  m.def("simulate",
        [](const GridEnvironment& env, std::uint64_t trips, std::uint64_t seed, const std::string& mode,
           unsigned threads) {
          SimulationConfig cfg;
          cfg.trips = trips;
          cfg.seed = seed;
          cfg.mode = parse_aggregation_mode(mode);
          cfg.threads = threads;
          EmpiricalDistribution emp;
          {
            py::gil_scoped_release release;
            emp = run_occupancy(env, cfg);
          }
          return py::make_tuple(to_array(emp.node), to_array(emp.standard_error));
        },
        py::arg("env"), py::arg("trips") = 1'000'000, py::arg("seed") = 1, py::arg("mode") = "per-trip",
        py::arg("threads") = 1, "Empirical occupancy and its standard errors");

  m.def("total_variation",
        [](const std::vector<double>& p, const std::vector<double>& q) { return total_variation(p, q); });
}
