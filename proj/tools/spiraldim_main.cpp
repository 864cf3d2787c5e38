// spiraldim: dimension laboratory for elliptical polynomial spirals.
//
// Subcommands compute the closed-form dimension theory (dims, spectrum,
// holder), run the constructive estimators (estimate-box, estimate-assouad,
// estimate-intermediate, mass-check, fbm) and render the curves (render).
// Every run writes its artifacts plus a JSON manifest that echoes the full
// configuration, so a run can be reproduced from the manifest alone.

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spiraldim/covering.hpp"
#include "spiraldim/fbm.hpp"
#include "spiraldim/formulas.hpp"
#include "spiraldim/holder.hpp"
#include "spiraldim/spiral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spiraldim;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
  std::array<char, 32> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("SPIRALDIM_OUT_DIR"))
      p = fs::path(dir) / p;
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

fs::path manifest_path(const fs::path& primary) {
  fs::path p = primary;
  p.replace_extension(".manifest.json");
  return p;
}

void write_manifest(const std::string& command, const json& config,
                    const std::vector<fs::path>& outputs) {
  json manifest;
  manifest["schema"] = 1;
  manifest["command"] = command;
  manifest["config"] = config;
  json outs = json::array();
  for (const fs::path& p : outputs) outs.push_back(p.string());
  manifest["outputs"] = outs;
  manifest["version"] = kVersion;
  write_text(manifest_path(outputs.front()), manifest.dump(2) + "\n");
}

struct ThetaGrid {
  double lo = 0.0, hi = 1.0, step = 0.01;
};

ThetaGrid parse_grid(const std::string& spec) {
  ThetaGrid g;
  const auto c1 = spec.find(':');
  const auto c2 = spec.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("grid: expected lo:hi:step");
  g.lo = std::stod(spec.substr(0, c1));
  g.hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
  g.step = std::stod(spec.substr(c2 + 1));
  if (!(g.step > 0.0) || g.hi < g.lo)
    throw std::invalid_argument("grid: expected lo <= hi, step > 0");
  return g;
}

json params_json(double p, double q) {
  return json{{"p", p}, {"q", q}};
}

std::string ladder_csv(const CoverLadder& ladder,
                       const std::function<double(double)>& denom) {
  std::string csv = "delta,count,log_ratio\n";
  for (const CoverEntry& e : ladder.entries) {
    csv += fmt(e.delta);
    csv += ',';
    csv += std::to_string(e.count);
    csv += ',';
    csv += fmt(std::log(static_cast<double>(e.count)) / denom(e.delta));
    csv += '\n';
  }
  return csv;
}

std::string svg_of(const SampledArc& arc) {
  double radius = 0.0;
  for (const ArcPoint& pt : arc.points)
    radius = std::max({radius, std::abs(pt.x), std::abs(pt.y)});
  radius *= 1.05;
  std::string svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
      "height=\"640\" viewBox=\"" +
      fmt(-radius) + " " + fmt(-radius) + " " + fmt(2 * radius) + " " +
      fmt(2 * radius) + "\">\n";
  for (std::size_t seg = 0; seg < arc.segment_starts.size(); ++seg) {
    const std::size_t begin = arc.segment_starts[seg];
    const std::size_t end = seg + 1 < arc.segment_starts.size()
                                ? arc.segment_starts[seg + 1]
                                : arc.points.size();
    svg += "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" +
           fmt(radius / 320.0) + "\" points=\"";
    for (std::size_t i = begin; i < end; ++i) {
      if (i > begin) svg += ' ';
      svg += fmt(arc.points[i].x);
      svg += ',';
      svg += fmt(-arc.points[i].y);  // svg y axis points down
    }
    svg += "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

DimensionValue closed_form(const std::string& quantity,
                           const SpiralParams& params, double theta,
                           double alpha) {
  if (quantity == "intermediate") return intermediate_dimension(params, theta);
  if (quantity == "box") return box_dimension(params);
  if (quantity == "assouad-spectrum") return assouad_spectrum(params, theta);
  if (quantity == "assouad") return assouad_dimension(params);
  if (quantity == "holder-image")
    return holder_image_box_bound(params, alpha, theta);
  if (quantity == "profile") return profile_upper_bound(params, alpha, theta);
  throw std::invalid_argument("unknown quantity " + quantity);
}

int run(int argc, char** argv) {
  CLI::App app{"dimension laboratory for elliptical polynomial spirals"};
  app.set_config("--config");
  app.require_subcommand(1);

  // shared knobs; registered per subcommand below
  double p = 0.0, q = 0.0;
  double r = 0.0, s = 0.0;
  double theta = 0.0, alpha = 1.0;
  double delta = 0.0, delta_min = 0.0, delta_max = 0.0;
  int levels = 5;
  std::uint64_t seed = 1, trials = 10000;
  int seeds = 20;
  std::size_t sites = 3000;
  double chord_factor = 0.5, max_chord = 0.002;
  std::uint64_t budget = 100'000'000ull;
  double s_tol = 1e-3;
  std::string out, report, cloud, theta_grid, quantity = "intermediate";
  std::string sweep_q;
  std::int64_t turns = 12;
  bool ellipses = false;

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--p", p, "horizontal decay exponent")->required();
    cmd->add_option("--q", q, "vertical decay exponent")->required();
  };
  auto add_ladder = [&](CLI::App* cmd) {
    cmd->add_option("--delta-min", delta_min, "finest scale")->required();
    cmd->add_option("--delta-max", delta_max, "coarsest scale")->required();
    cmd->add_option("--levels", levels, "ladder size");
    cmd->add_option("--chord-factor", chord_factor,
                    "sampling chord as a fraction of delta");
    cmd->add_option("--budget", budget, "sample point budget");
  };

  CLI::App* dims = app.add_subcommand(
      "dims", "closed-form dimensions across theta");
  add_params(dims);
  dims->add_option("--theta", theta, "single theta value");
  dims->add_option("--theta-grid", theta_grid, "lo:hi:step grid");
  dims->add_option("--alpha", alpha, "Holder exponent (image/profile)");
  dims->add_option("--quantity", quantity,
                   "intermediate|box|assouad-spectrum|assouad|holder-image|"
                   "profile");
  dims->add_option("--out", out, "output path (.csv for grids, .json "
                   "otherwise)")->required();

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Assouad spectrum curve over [0, 1)");
  add_params(spectrum);
  double theta_min = 0.0, theta_max = 0.99;
  int points = 100;
  spectrum->add_option("--theta-min", theta_min, "grid start");
  spectrum->add_option("--theta-max", theta_max, "grid end (< 1)");
  spectrum->add_option("--points", points, "grid size");
  spectrum->add_option("--out", out, "output CSV")->required();

  CLI::App* ebox = app.add_subcommand(
      "estimate-box", "box-counting dimension estimate");
  add_params(ebox);
  add_ladder(ebox);
  ebox->add_option("--out", out, "ladder CSV")->required();
  ebox->add_option("--report", report, "fit report JSON");

  CLI::App* eassouad = app.add_subcommand(
      "estimate-assouad", "localized Assouad spectrum estimate");
  add_params(eassouad);
  add_ladder(eassouad);
  eassouad->add_option("--theta", theta, "window exponent")->required();
  eassouad->add_option("--out", out, "ladder CSV")->required();
  eassouad->add_option("--report", report, "fit report JSON");

  CLI::App* einter = app.add_subcommand(
      "estimate-intermediate", "critical-exponent bisection estimate");
  add_params(einter);
  add_ladder(einter);
  einter->add_option("--theta", theta, "cover exponent")->required();
  einter->add_option("--s-tol", s_tol, "bisection tolerance");
  einter->add_option("--out", out, "report JSON")->required();

  CLI::App* mass = app.add_subcommand(
      "mass-check", "mass-distribution verification");
  add_params(mass);
  mass->add_option("--theta", theta, "cover exponent")->required();
  mass->add_option("--delta", delta, "scale")->required();
  mass->add_option("--trials", trials, "random windows");
  mass->add_option("--seed", seed, "window seed");
  mass->add_option("--out", out, "report JSON")->required();

  CLI::App* holder = app.add_subcommand(
      "holder", "Holder exponent bounds for spiral deformations");
  add_params(holder);
  holder->add_option("--r", r, "target horizontal exponent")->required();
  holder->add_option("--s", s, "target vertical exponent")->required();
  holder->add_option("--sweep-q", sweep_q,
                     "lo:hi:step sweep of the source q (CSV output)");
  holder->add_option("--out", out, "report JSON (or sweep CSV)")->required();

  CLI::App* fbm = app.add_subcommand(
      "fbm", "fractional-Brownian image dimension experiment");
  add_params(fbm);
  add_ladder(fbm);
  fbm->add_option("--alpha", alpha, "motion index")->required();
  fbm->add_option("--seeds", seeds, "number of seeds");
  fbm->add_option("--seed", seed, "base seed");
  fbm->add_option("--sites", sites, "sample sites");
  fbm->add_option("--out", out, "report JSON")->required();
  fbm->add_option("--cloud", cloud, "image cloud CSV (first seed)");

  CLI::App* render = app.add_subcommand(
      "render", "SVG rendering of the spiral or its ellipse family");
  add_params(render);
  render->add_option("--turns", turns, "turns (or ellipses) to draw");
  render->add_option("--max-chord", max_chord, "polyline chord bound");
  render->add_flag("--ellipses", ellipses, "draw the concentric ellipses");
  render->add_option("--out", out, "output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err{{"schema", 1}, {"category", "validation"}, {"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  if (dims->parsed()) {
    const SpiralParams params{p, q};
    const fs::path path = resolve_out(out);
    json config = params_json(p, q);
    config["quantity"] = quantity;
    config["alpha"] = alpha;
    if (!theta_grid.empty()) {
      const ThetaGrid g = parse_grid(theta_grid);
      config["theta_grid"] = theta_grid;
      std::string csv = "theta,value,branch\n";
      for (int i = 0;; ++i) {
        const double th = g.lo + g.step * i;
        if (th > g.hi + 1e-12) break;
        const double clamped = std::min(th, g.hi);
        const DimensionValue v =
            closed_form(quantity, params, clamped, alpha);
        csv += fmt(clamped);
        csv += ',';
        csv += fmt(v.value);
        csv += ',';
        csv += v.branch + "\n";
        if (clamped >= g.hi) break;
      }
      write_text(path, csv);
    } else {
      config["theta"] = theta;
      const DimensionValue v = closed_form(quantity, params, theta, alpha);
      json record = params_json(p, q);
      record["schema"] = 1;
      record["theta"] = theta;
      if (quantity == "holder-image" || quantity == "profile")
        record["alpha"] = alpha;
      record["quantity"] = quantity;
      record["value"] = v.value;
      record["branch"] = v.branch;
      write_text(path, record.dump(2) + "\n");
    }
    write_manifest("dims", config, {path});
    return 0;
  }

  if (spectrum->parsed()) {
    const SpiralParams params{p, q};
    if (!(theta_max < 1.0))
      throw std::invalid_argument("spectrum grids exclude theta = 1");
    const fs::path path = resolve_out(out);
    std::string csv = "theta,value,branch\n";
    for (int i = 0; i < points; ++i) {
      const double th =
          theta_min + (theta_max - theta_min) * i / (points - 1);
      const DimensionValue v = assouad_spectrum(params, th);
      csv += fmt(th);
      csv += ',';
      csv += fmt(v.value);
      csv += ',';
      csv += v.branch + "\n";
    }
    write_text(path, csv);
    json config = params_json(p, q);
    config["theta_min"] = theta_min;
    config["theta_max"] = theta_max;
    config["points"] = points;
    const auto [t1, t2] = phase_transitions(params);
    config["phase_transitions"] = json::array({t1, t2});
    write_manifest("spectrum", config, {path});
    return 0;
  }

  auto estimator_options = [&]() {
    EstimatorOptions opts;
    opts.chord_factor = chord_factor;
    opts.point_budget = budget;
    return opts;
  };
  auto common_config = [&]() {
    json config = params_json(p, q);
    config["delta_min"] = delta_min;
    config["delta_max"] = delta_max;
    config["levels"] = levels;
    config["chord_factor"] = chord_factor;
    config["budget"] = budget;
    return config;
  };

  if (ebox->parsed()) {
    const SpiralParams params{p, q};
    const CoverLadder ladder = estimate_box_dimension(
        params, delta_min, delta_max, levels, estimator_options());
    const fs::path path = resolve_out(out);
    write_text(path, ladder_csv(ladder, [](double d) {
                 return std::log(1.0 / d);
               }));
    std::vector<fs::path> outputs{path};
    if (!report.empty()) {
      const fs::path rpath = resolve_out(report);
      json rj = params_json(p, q);
      rj["schema"] = 1;
      rj["slope"] = ladder.fit.slope;
      rj["intercept"] = ladder.fit.intercept;
      rj["r2"] = ladder.fit.r2;
      rj["closed_form"] = box_dimension(params).value;
      write_text(rpath, rj.dump(2) + "\n");
      outputs.push_back(rpath);
    }
    write_manifest("estimate-box", common_config(), outputs);
    return 0;
  }

  if (eassouad->parsed()) {
    const SpiralParams params{p, q};
    const std::vector<double> deltas =
        geometric_ladder(delta_min, delta_max, levels);
    const CoverLadder ladder =
        estimate_assouad_spectrum(params, theta, deltas, estimator_options());
    const fs::path path = resolve_out(out);
    write_text(path, ladder_csv(ladder, [&](double d) {
                 return (1.0 - theta) * std::log(1.0 / d);
               }));
    std::vector<fs::path> outputs{path};
    if (!report.empty()) {
      const fs::path rpath = resolve_out(report);
      json rj = params_json(p, q);
      rj["schema"] = 1;
      rj["theta"] = theta;
      rj["slope"] = ladder.fit.slope;
      rj["intercept"] = ladder.fit.intercept;
      rj["r2"] = ladder.fit.r2;
      rj["closed_form"] = assouad_spectrum(params, theta).value;
      write_text(rpath, rj.dump(2) + "\n");
      outputs.push_back(rpath);
    }
    json config = common_config();
    config["theta"] = theta;
    write_manifest("estimate-assouad", config, outputs);
    return 0;
  }

  if (einter->parsed()) {
    const SpiralParams params{p, q};
    EstimatorOptions opts = estimator_options();
    opts.s_tolerance = s_tol;
    const std::vector<double> deltas =
        geometric_ladder(delta_min, delta_max, levels);
    const DimensionValue est =
        estimate_intermediate_dimension(params, theta, deltas, opts);
    const fs::path path = resolve_out(out);
    json rj = params_json(p, q);
    rj["schema"] = 1;
    rj["theta"] = theta;
    rj["estimate"] = est.value;
    rj["method"] = est.branch;
    rj["closed_form"] = intermediate_dimension(params, theta).value;
    write_text(path, rj.dump(2) + "\n");
    json config = common_config();
    config["theta"] = theta;
    config["s_tol"] = s_tol;
    write_manifest("estimate-intermediate", config, {path});
    return 0;
  }

  if (mass->parsed()) {
    const SpiralParams params{p, q};
    const MassCheckReport rep = mass_distribution_check(
        params, theta, delta, trials, seed);
    const fs::path path = resolve_out(out);
    json rj = params_json(p, q);
    rj["schema"] = 1;
    rj["theta"] = theta;
    rj["delta"] = delta;
    rj["s"] = rep.distribution.s;
    rj["cutoff"] = rep.distribution.cutoff;
    rj["total_mass"] = rep.distribution.total_mass;
    rj["trials"] = rep.trials;
    rj["seed"] = rep.seed;
    rj["worst_ratio"] = rep.worst_ratio;
    rj["worst_window"] = json{{"cx", rep.worst.cx},
                              {"cy", rep.worst.cy},
                              {"diameter", rep.worst.diameter},
                              {"mass", rep.worst.mass},
                              {"ratio", rep.worst.ratio}};
    write_text(path, rj.dump(2) + "\n");
    json config = params_json(p, q);
    config["theta"] = theta;
    config["delta"] = delta;
    config["trials"] = trials;
    config["seed"] = seed;
    write_manifest("mass-check", config, {path});
    return 0;
  }

  if (holder->parsed()) {
    const fs::path path = resolve_out(out);
    json config = params_json(p, q);
    config["r"] = r;
    config["s"] = s;
    if (!sweep_q.empty()) {
      const ThetaGrid g = parse_grid(sweep_q);
      config["sweep_q"] = sweep_q;
      std::string csv = "q,box_bound,profile_bound,best,binding\n";
      for (int i = 0;; ++i) {
        const double qq = g.lo + g.step * i;
        if (qq > g.hi + 1e-12) break;
        const HolderBoundReport rep = best_bound({{p, qq}, {r, s}});
        csv += fmt(qq);
        csv += ',';
        csv += rep.box_bound ? fmt(*rep.box_bound) : std::string();
        csv += ',';
        csv += rep.profile_bound ? fmt(*rep.profile_bound) : std::string();
        csv += ',';
        csv += fmt(rep.best);
        csv += ',';
        csv += rep.binding + "\n";
      }
      write_text(path, csv);
    } else {
      const HolderBoundReport rep = best_bound({{p, q}, {r, s}});
      json rj = params_json(p, q);
      rj["schema"] = 1;
      rj["r"] = r;
      rj["s"] = s;
      rj["box_bound"] = rep.box_bound ? json(*rep.box_bound) : json();
      rj["profile_bound"] =
          rep.profile_bound ? json(*rep.profile_bound) : json();
      rj["box_clamped"] = rep.box_clamped;
      rj["profile_clamped"] = rep.profile_clamped;
      rj["best"] = rep.best;
      rj["binding"] = rep.binding;
      write_text(path, rj.dump(2) + "\n");
    }
    write_manifest("holder", config, {path});
    return 0;
  }

  if (fbm->parsed()) {
    const SpiralParams params{p, q};
    const std::vector<double> deltas =
        geometric_ladder(delta_min, delta_max, levels);
    ImageDimOptions opts;
    opts.sites = sites;
    const ImageDimReport rep = image_box_dimension_experiment(
        params, alpha, seeds, deltas, seed, opts);
    const fs::path path = resolve_out(out);
    json rj = params_json(p, q);
    rj["schema"] = 1;
    rj["alpha"] = alpha;
    rj["bound"] = rep.bound;
    rj["seeds"] = rep.seeds;
    rj["slopes"] = rep.slopes;
    rj["mean_slope"] = rep.mean_slope;
    rj["implied_profile"] = rep.implied_profile;
    rj["failures"] = rep.failures;
    rj["ladder"] = rep.ladder;
    rj["turns"] = rep.turns;
    rj["sites"] = rep.site_count;
    write_text(path, rj.dump(2) + "\n");
    std::vector<fs::path> outputs{path};
    if (!cloud.empty()) {
      std::vector<PlanePoint> pts =
          equidistributed_sites(params, rep.turns, sites);
      if (alpha != 1.0) pts = sample_fbm(pts, alpha, seed).values;
      const fs::path cpath = resolve_out(cloud);
      std::string csv = "x,y\n";
      for (const PlanePoint& pt : pts) {
        csv += fmt(pt.x);
        csv += ',';
        csv += fmt(pt.y);
        csv += '\n';
      }
      write_text(cpath, csv);
      outputs.push_back(cpath);
    }
    json config = common_config();
    config["alpha"] = alpha;
    config["seeds"] = seeds;
    config["seed"] = seed;
    config["sites"] = sites;
    write_manifest("fbm", config, outputs);
    return 0;
  }

  if (render->parsed()) {
    const SpiralParams params{p, q};
    const SampledArc arc = ellipses
                               ? ellipse_family_points(params, turns,
                                                       max_chord)
                               : sample_spiral(params, 1, turns, max_chord);
    const fs::path path = resolve_out(out);
    write_text(path, svg_of(arc));
    json config = params_json(p, q);
    config["turns"] = turns;
    config["max_chord"] = max_chord;
    config["ellipses"] = ellipses;
    write_manifest("render", config, {path});
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const BudgetError& e) {
    json err{{"schema", 1}, {"category", "resource"}, {"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    json err{{"schema", 1}, {"category", "validation"}, {"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    json err{{"schema", 1}, {"category", "validation"}, {"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"schema", 1}, {"category", "internal"}, {"error", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
