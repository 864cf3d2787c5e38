#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>

#include "spiraldim/covering.hpp"
#include "spiraldim/fbm.hpp"
#include "spiraldim/formulas.hpp"
#include "spiraldim/holder.hpp"
#include "spiraldim/spiral.hpp"

namespace py = pybind11;
using namespace spiraldim;

namespace {

py::array_t<double> arc_to_array(const SampledArc& arc) {
  py::array_t<double> out({arc.points.size(), std::size_t(3)});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < arc.points.size(); ++i) {
    view(i, 0) = arc.points[i].t;
    view(i, 1) = arc.points[i].x;
    view(i, 2) = arc.points[i].y;
  }
  return out;
}

py::array_t<double> points_to_array(const std::vector<PlanePoint>& pts) {
  py::array_t<double> out({pts.size(), std::size_t(2)});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    view(i, 0) = pts[i].x;
    view(i, 1) = pts[i].y;
  }
  return out;
}

std::vector<PlanePoint> array_to_points(
    const py::array_t<double, py::array::c_style | py::array::forcecast>&
        array) {
  if (array.ndim() != 2 || array.shape(1) != 2)
    throw std::invalid_argument("expected an (n, 2) array of sites");
  std::vector<PlanePoint> pts(static_cast<std::size_t>(array.shape(0)));
  auto view = array.unchecked<2>();
  for (py::ssize_t i = 0; i < array.shape(0); ++i)
    pts[static_cast<std::size_t>(i)] = {view(i, 0), view(i, 1)};
  return pts;
}

py::dict fit_to_dict(const LineFit& fit) {
  py::dict d;
  d["slope"] = fit.slope;
  d["intercept"] = fit.intercept;
  d["r2"] = fit.r2;
  return d;
}

py::dict ladder_to_dict(const CoverLadder& ladder) {
  py::list deltas, counts;
  for (const CoverEntry& e : ladder.entries) {
    deltas.append(e.delta);
    counts.append(e.count);
  }
  py::dict d;
  d["delta"] = deltas;
  d["count"] = counts;
  d["fit"] = fit_to_dict(ladder.fit);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "dimension laboratory for elliptical polynomial spirals";

  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<SpiralParams>(m, "SpiralParams")
      .def(py::init<double, double>(), py::arg("p"), py::arg("q"))
      .def_readonly("p", &SpiralParams::p)
      .def_readonly("q", &SpiralParams::q)
      .def("__repr__", [](const SpiralParams& s) {
        std::ostringstream os;
        os << "SpiralParams(p=" << s.p << ", q=" << s.q << ")";
        return os.str();
      });

  py::class_<DimensionValue>(m, "DimensionValue")
      .def_readonly("value", &DimensionValue::value)
      .def_readonly("branch", &DimensionValue::branch)
      .def("__float__", [](const DimensionValue& v) { return v.value; })
      .def("__repr__", [](const DimensionValue& v) {
        std::ostringstream os;
        os << "DimensionValue(" << v.value << ", '" << v.branch << "')";
        return os.str();
      });

  py::class_<SampledArc>(m, "SampledArc")
      .def_property_readonly("max_chord",
                             [](const SampledArc& a) { return a.max_chord; })
      .def_property_readonly(
          "size", [](const SampledArc& a) { return a.points.size(); })
      .def("to_numpy", &arc_to_array)
      .def("length", &polyline_length);

  py::class_<WindowIndices>(m, "WindowIndices")
      .def_readonly("L_p", &WindowIndices::L_p)
      .def_readonly("L_q", &WindowIndices::L_q)
      .def_readonly("l_p", &WindowIndices::l_p)
      .def_readonly("l_q", &WindowIndices::l_q);

  py::class_<TwoScaleCover>(m, "TwoScaleCover")
      .def_readonly("theta", &TwoScaleCover::theta)
      .def_readonly("delta", &TwoScaleCover::delta)
      .def_readonly("alpha", &TwoScaleCover::alpha)
      .def_readonly("cutoff", &TwoScaleCover::cutoff)
      .def_readonly("fine_boxes", &TwoScaleCover::fine_boxes)
      .def_readonly("coarse_boxes", &TwoScaleCover::coarse_boxes)
      .def("s_cost", &TwoScaleCover::s_cost, py::arg("s"));

  // geometry
  m.def(
      "point_at",
      [](const SpiralParams& params, double t) {
        const PlanePoint pt = point_at(params, t);
        return py::make_tuple(pt.x, pt.y);
      },
      py::arg("params"), py::arg("t"));
  m.def("turn_length_bounds", &turn_length_bounds, py::arg("params"),
        py::arg("k"));
  m.def("turn_length_sum", &turn_length_sum, py::arg("params"), py::arg("m"),
        py::arg("n"));
  m.def(
      "turn_gap_lower_bound",
      [](const SpiralParams& params, std::int64_t k, std::int64_t m) {
        return turn_gap_lower_bound(params, k, m);
      },
      py::arg("params"), py::arg("k"), py::arg("m"));
  m.def(
      "sample_spiral",
      [](const SpiralParams& params, std::int64_t k_min, std::int64_t k_max,
         double max_chord) {
        return sample_spiral(params, k_min, k_max, max_chord);
      },
      py::arg("params"), py::arg("k_min"), py::arg("k_max"),
      py::arg("max_chord"));
  m.def(
      "ellipse_family_points",
      [](const SpiralParams& params, std::int64_t n_max, double max_chord) {
        return ellipse_family_points(params, n_max, max_chord);
      },
      py::arg("params"), py::arg("n_max"), py::arg("max_chord"));
  m.def(
      "equidistributed_sites",
      [](const SpiralParams& params, std::int64_t k_max, std::size_t count) {
        return points_to_array(equidistributed_sites(params, k_max, count));
      },
      py::arg("params"), py::arg("k_max"), py::arg("count"));

  // closed forms
  m.def("intermediate_dimension", &intermediate_dimension, py::arg("params"),
        py::arg("theta"));
  m.def("box_dimension", &box_dimension, py::arg("params"));
  m.def("assouad_spectrum", &assouad_spectrum, py::arg("params"),
        py::arg("theta"));
  m.def("assouad_dimension", &assouad_dimension, py::arg("params"));
  m.def("holder_image_box_bound", &holder_image_box_bound, py::arg("params"),
        py::arg("alpha"), py::arg("theta"));
  m.def("profile_upper_bound", &profile_upper_bound, py::arg("params"),
        py::arg("alpha"), py::arg("theta"));
  m.def("phase_transitions", &phase_transitions, py::arg("params"));

  // deformation bounds
  m.def(
      "box_dim_bound",
      [](double p, double q, double r, double s) {
        return box_dim_bound({{p, q}, {r, s}});
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("s"));
  m.def(
      "profile_bound",
      [](double p, double q, double r, double s) {
        return profile_bound({{p, q}, {r, s}});
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("s"));
  m.def("hyperbolic_bound", &hyperbolic_bound, py::arg("p"), py::arg("q"));
  m.def(
      "best_bound",
      [](double p, double q, double r, double s) {
        const HolderBoundReport rep = best_bound({{p, q}, {r, s}});
        py::dict d;
        d["box_bound"] =
            rep.box_bound ? py::object(py::float_(*rep.box_bound))
                          : py::object(py::none());
        d["profile_bound"] =
            rep.profile_bound ? py::object(py::float_(*rep.profile_bound))
                              : py::object(py::none());
        d["box_clamped"] = rep.box_clamped;
        d["profile_clamped"] = rep.profile_clamped;
        d["best"] = rep.best;
        d["binding"] = rep.binding;
        return d;
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("s"));

  // covering lab
  m.def("grid_box_count", &grid_box_count, py::arg("arc"), py::arg("delta"),
        py::arg("anchor_x") = 0.0, py::arg("anchor_y") = 0.0);
  m.def(
      "box_cover_count",
      [](const SpiralParams& params, double delta) {
        return box_cover_count(params, delta);
      },
      py::arg("params"), py::arg("delta"));
  m.def(
      "estimate_box_dimension",
      [](const SpiralParams& params, double delta_min, double delta_max,
         int levels) {
        return ladder_to_dict(
            estimate_box_dimension(params, delta_min, delta_max, levels));
      },
      py::arg("params"), py::arg("delta_min"), py::arg("delta_max"),
      py::arg("levels"));
  m.def("window_indices", &window_indices, py::arg("params"),
        py::arg("delta"), py::arg("theta"));
  m.def(
      "local_cover_count",
      [](const SpiralParams& params, double delta, double theta) {
        const LocalCoverCount local = local_cover_count(params, delta, theta);
        py::dict d;
        d["numeric"] = local.numeric;
        d["analytic"] = local.analytic;
        d["branch"] = local.branch;
        d["windows"] = py::make_tuple(local.windows.L_p, local.windows.L_q,
                                      local.windows.l_p, local.windows.l_q);
        return d;
      },
      py::arg("params"), py::arg("delta"), py::arg("theta"));
  m.def(
      "estimate_assouad_spectrum",
      [](const SpiralParams& params, double theta,
         const std::vector<double>& deltas) {
        return ladder_to_dict(estimate_assouad_spectrum(params, theta,
                                                        deltas));
      },
      py::arg("params"), py::arg("theta"), py::arg("deltas"));
  m.def(
      "two_scale_cover",
      [](const SpiralParams& params, double theta, double delta, double s,
         double alpha) {
        return two_scale_cover(params, theta, delta, s, alpha);
      },
      py::arg("params"), py::arg("theta"), py::arg("delta"), py::arg("s"),
      py::arg("alpha") = 1.0);
  m.def(
      "estimate_intermediate_dimension",
      [](const SpiralParams& params, double theta,
         const std::vector<double>& deltas) {
        return estimate_intermediate_dimension(params, theta, deltas);
      },
      py::arg("params"), py::arg("theta"), py::arg("deltas"));
  m.def(
      "mass_distribution_check",
      [](const SpiralParams& params, double theta, double delta,
         std::size_t trials, std::uint64_t seed) {
        const MassCheckReport rep =
            mass_distribution_check(params, theta, delta, trials, seed);
        py::dict d;
        d["s"] = rep.distribution.s;
        d["cutoff"] = rep.distribution.cutoff;
        d["weights"] = rep.distribution.weights;
        d["total_mass"] = rep.distribution.total_mass;
        d["trials"] = rep.trials;
        d["seed"] = rep.seed;
        d["worst_ratio"] = rep.worst_ratio;
        d["worst_window"] =
            py::make_tuple(rep.worst.cx, rep.worst.cy, rep.worst.diameter,
                           rep.worst.mass, rep.worst.ratio);
        return d;
      },
      py::arg("params"), py::arg("theta"), py::arg("delta"),
      py::arg("trials"), py::arg("seed"));

  // fractional Brownian images
  m.def(
      "sample_fbm",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>&
             sites,
         double alpha, std::uint64_t seed) {
        const FbmField field = sample_fbm(array_to_points(sites), alpha, seed);
        py::dict d;
        d["values"] = points_to_array(field.values);
        d["jitter"] = field.jitter;
        d["seed"] = field.seed;
        return d;
      },
      py::arg("sites"), py::arg("alpha"), py::arg("seed"));
  m.def(
      "image_box_dimension_experiment",
      [](const SpiralParams& params, double alpha, int seed_count,
         const std::vector<double>& deltas, std::uint64_t seed_base,
         std::size_t sites) {
        ImageDimOptions opts;
        opts.sites = sites;
        const ImageDimReport rep = image_box_dimension_experiment(
            params, alpha, seed_count, deltas, seed_base, opts);
        py::dict d;
        d["alpha"] = rep.alpha;
        d["bound"] = rep.bound;
        d["seeds"] = rep.seeds;
        d["slopes"] = rep.slopes;
        d["mean_slope"] = rep.mean_slope;
        d["implied_profile"] = rep.implied_profile;
        d["failures"] = rep.failures;
        d["ladder"] = rep.ladder;
        d["turns"] = rep.turns;
        d["sites"] = rep.site_count;
        return d;
      },
      py::arg("params"), py::arg("alpha"), py::arg("seed_count"),
      py::arg("deltas"), py::arg("seed_base") = 1, py::arg("sites") = 3000);

  m.def("geometric_ladder", &geometric_ladder, py::arg("delta_min"),
        py::arg("delta_max"), py::arg("levels"));

#ifdef VERSION_INFO
#define SPIRALDIM_STR(x) #x
#define SPIRALDIM_XSTR(x) SPIRALDIM_STR(x)
  m.attr("__version__") = SPIRALDIM_XSTR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
