// Copyright 2026 The packmap Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "packmap/cubemap.hpp"
#include "packmap/error.hpp"
#include "packmap/extension.hpp"
#include "packmap/metric_space.hpp"
#include "packmap/oscillation.hpp"
#include "packmap/packing.hpp"
#include "packmap/ultrametric.hpp"

namespace py = pybind11;
using namespace packmap;

namespace {

ExtensionProblem make_problem(const FiniteMetricSpace& space,
                              std::vector<Index> subset,
                              std::vector<double> values) {
  return ExtensionProblem(space, std::move(subset), std::move(values));
}

py::dict tally_dict(const CheckTally& t) {
  py::dict d;
  d["checked"] = t.checked;
  d["failures"] = t.failures;
  d["worst_slack"] = t.worst_slack;
  d["witness"] = t.witness;
  return d;
}

}  // namespace

PYBIND11_MODULE(_packmap, m) {
  m.doc() = "Packing pre-measures, little Lipschitz extensions and cube maps "
            "on finite metric spaces.";

  // Leaked on purpose: the type must outlive the module's teardown.
  static py::handle error_type =
      py::exception<Error>(m, "PackmapError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = error_type(e.what());
      instance.attr("kind") = std::string(error_kind_name(e.kind()));
      instance.attr("witness") = e.witness();
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  py::class_<FiniteMetricSpace>(m, "FiniteMetricSpace")
      .def_static("from_matrix",
                  py::overload_cast<const std::vector<std::vector<double>>&>(
                      &validate_metric),
                  py::arg("dist"))
      .def_static("from_points", &from_point_cloud, py::arg("points"))
      .def_property_readonly("n", &FiniteMetricSpace::size)
      .def("__len__", &FiniteMetricSpace::size)
      .def("distance", [](const FiniteMetricSpace& s, Index i, Index j) {
        s.check_index(i);
        s.check_index(j);
        return s.distance(i, j);
      })
      .def("diameter", &FiniteMetricSpace::diameter)
      .def("ball", [](const FiniteMetricSpace& s, Index x, double r) {
        return ball_members(s, x, r);
      });

  m.def("set_diam", &set_diam);
  m.def("separated_net", &separated_net, py::arg("space"), py::arg("set"),
        py::arg("r"));
  m.def(
      "greedy_packing_cover",
      [](const FiniteMetricSpace& space, const IndexSet& set,
         const std::vector<double>& radii, double alpha) {
        std::vector<std::pair<Index, double>> items;
        for (const auto& it : greedy_packing_cover(space, set, radii, alpha).items) {
          items.emplace_back(it.center, it.radius);
        }
        return items;
      },
      py::arg("space"), py::arg("set"), py::arg("radii"), py::arg("alpha"));

  py::class_<PremeasureResult>(m, "PremeasureResult")
      .def_readonly("value", &PremeasureResult::value)
      .def_readonly("witness", &PremeasureResult::witness)
      .def_readonly("radii", &PremeasureResult::witness_radii)
      .def_readonly("limit_radius", &PremeasureResult::limit_radius)
      .def_readonly("exact", &PremeasureResult::exact);
  m.def("premeasure_exact", &premeasure_exact, py::arg("space"), py::arg("set"),
        py::arg("s"), py::arg("delta"), py::arg("cap") = kDefaultBruteForceCap);
  m.def("premeasure_heuristic", &premeasure_heuristic, py::arg("space"),
        py::arg("set"), py::arg("s"), py::arg("delta"), py::arg("effort") = 200,
        py::arg("seed") = 0);

  py::class_<DimensionProfile>(m, "DimensionProfile")
      .def_readonly("levels", &DimensionProfile::levels)
      .def_readonly("scales", &DimensionProfile::scales)
      .def_readonly("counts", &DimensionProfile::counts)
      .def_readonly("used", &DimensionProfile::used)
      .def_readonly("slope", &DimensionProfile::slope)
      .def_readonly("dim_estimate", &DimensionProfile::dim_estimate)
      .def_readonly("rescale_factor", &DimensionProfile::rescale_factor);
  m.def("dimension_profile", &dimension_profile, py::arg("space"), py::arg("set"),
        py::arg("n_min"), py::arg("n_max"));

  m.def("default_radius_grid",
        [](const FiniteMetricSpace& s) { return default_radius_grid(s, s.all_points()); });
  m.def(
      "frostman_rescale",
      [](const FiniteMetricSpace& space, std::vector<double> weights, double s,
         std::vector<double> grid) {
        const auto r = frostman_rescale(space, MassDistribution(std::move(weights)), s,
                                        std::move(grid));
        return py::make_tuple(r.c, r.rescaled.weights());
      },
      py::arg("space"), py::arg("weights"), py::arg("s"), py::arg("grid"));
  m.def(
      "frostman_check",
      [](const FiniteMetricSpace& space, std::vector<double> weights, double s,
         std::vector<double> grid) {
        const auto r = frostman_check(space, MassDistribution(std::move(weights)), s,
                                      std::move(grid));
        std::vector<bool> passes;
        for (const auto& p : r.points) passes.push_back(p.passes);
        return passes;
      },
      py::arg("space"), py::arg("weights"), py::arg("s"), py::arg("grid"));

  m.def(
      "oscillation",
      [](const FiniteMetricSpace& space, std::vector<double> values, Index x, double r) {
        const auto o = oscillation(SampledFunction::scalar(space, std::move(values)), x, r);
        return py::make_tuple(o.omega, o.omega_hat);
      },
      py::arg("space"), py::arg("values"), py::arg("x"), py::arg("r"));
  m.def(
      "lip_lower",
      [](const FiniteMetricSpace& space, std::vector<double> values, Index x,
         double beta, std::vector<double> grid) {
        const auto f = SampledFunction::scalar(space, std::move(values));
        return grid.empty() ? lip_lower(f, x, beta) : lip_lower(f, x, beta, grid);
      },
      py::arg("space"), py::arg("values"), py::arg("x"), py::arg("beta") = 1.0,
      py::arg("grid") = std::vector<double>{});

  m.def(
      "extend",
      [](const FiniteMetricSpace& space, std::vector<Index> subset,
         std::vector<double> values, bool unbounded) {
        const auto p = make_problem(space, std::move(subset), std::move(values));
        return unbounded ? extend_unbounded(p).values : extend_bounded(p).values;
      },
      py::arg("space"), py::arg("subset"), py::arg("values"),
      py::arg("unbounded") = false);
  m.def(
      "verify_extension",
      [](const FiniteMetricSpace& space, std::vector<Index> subset,
         std::vector<double> values, std::vector<double> fstar,
         std::vector<double> epsilons) {
        const auto p = make_problem(space, std::move(subset), std::move(values));
        ExtensionResult r;
        r.values = std::move(fstar);
        if (r.values.size() != space.size()) {
          throw Error(ErrorKind::kMismatchedInputs, "f* needs one value per point");
        }
        const auto v = verify_extension(p, r, {}, epsilons);
        py::dict d;
        d["passed"] = v.passed;
        d["restriction_exact"] = v.restriction_exact;
        d["oscillation_bound"] = tally_dict(v.oscillation_bound);
        d["off_set_lipschitz"] = tally_dict(v.off_set_lipschitz);
        d["transfer_bound"] = tally_dict(v.transfer_bound);
        return d;
      },
      py::arg("space"), py::arg("subset"), py::arg("values"), py::arg("fstar"),
      py::arg("epsilons") = std::vector<double>{0.1, 0.25, 0.5});

  m.def("is_ultrametric", [](const FiniteMetricSpace& s) {
    const auto c = is_ultrametric(s);
    return py::make_tuple(c.ultrametric, c.worst_ratio,
                          std::vector<Index>(c.triple.begin(), c.triple.end()));
  });
  m.def("subdominant_ultrametric", [](const FiniteMetricSpace& s) {
    const auto tree = subdominant_ultrametric(s);
    std::vector<std::vector<double>> u(s.size(), std::vector<double>(s.size()));
    for (Index i = 0; i < s.size(); ++i) {
      for (Index j = 0; j < s.size(); ++j) u[i][j] = tree.distance(i, j);
    }
    return u;
  });
  m.def("monotone_order", [](const FiniteMetricSpace& s) {
    const auto o = monotone_order_from_tree(s, subdominant_ultrametric(s));
    return py::make_tuple(o.order, o.c);
  });
  m.def("monotone_constant", &monotone_constant, py::arg("space"), py::arg("order"));
  m.def(
      "extract_ultra_subset",
      [](const FiniteMetricSpace& s, double distortion, int effort, std::uint64_t seed) {
        const auto u = extract_ultra_subset(s, distortion, effort, seed);
        return py::make_tuple(u.subset, u.distortion);
      },
      py::arg("space"), py::arg("distortion"), py::arg("effort") = 50,
      py::arg("seed") = 0);

  m.def("hilbert_cell", &hilbert_cell, py::arg("h"), py::arg("dim"), py::arg("order"));
  m.def("spacefilling_curve", &spacefilling_curve, py::arg("t"), py::arg("dim"),
        py::arg("order"));
  m.def(
      "cube_map",
      [](const FiniteMetricSpace& space, std::vector<double> weights, int dim, int order,
         double s) {
        CubeMapOptions opt;
        opt.dim = dim;
        opt.order = order;
        opt.s = s;
        const auto r = cube_map_pipeline(space, MassDistribution(std::move(weights)), opt);
        py::dict d;
        d["g"] = r.g_values;
        d["mapped"] = r.mapped;
        d["covered"] = r.covered;
        d["coverage_level"] = r.coverage_level;
        d["coverage_resolution"] = r.coverage_resolution;
        d["max_cell_hits"] = r.max_cell_hits;
        d["c"] = r.monotone.c;
        d["order"] = r.monotone.order;
        d["holder_bound"] = r.holder_bound;
        d["g_lower_holder_worst"] = r.g_lower_holder_worst;
        return d;
      },
      py::arg("space"), py::arg("weights"), py::arg("dim") = 2, py::arg("order") = 8,
      py::arg("s") = 1.0);
}
