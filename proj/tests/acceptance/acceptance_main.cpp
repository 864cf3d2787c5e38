// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 9 exercises the CLI binary (path via --cli or the
// SPIRALDIM_CLI environment variable).

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spiraldim/covering.hpp"
#include "spiraldim/fbm.hpp"
#include "spiraldim/formulas.hpp"
#include "spiraldim/holder.hpp"
#include "spiraldim/spiral.hpp"

namespace fs = std::filesystem;
using namespace spiraldim;

namespace {

struct Recorder {
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void close(double got, double expected, double tol,
             const std::string& what) {
    if (!(std::abs(got - expected) <= tol)) {
      std::ostringstream os;
      os << what << ": got " << got << ", expected " << expected << " +/- "
         << tol;
      failures.push_back(os.str());
    }
  }
};

std::string g_cli_path;
fs::path g_scratch;

// ---- criterion 1: closed forms against independently recomputed values ----

void criterion1(Recorder& rec) {
  auto exact = [&](double got, double expected, const std::string& what) {
    rec.close(got, expected, 1e-12, what);
  };
  exact(intermediate_dimension({0.1, 0.8}, 0.5).value, 1.8 / 1.35,
        "intermediate (0.1,0.8,theta=0.5)");
  exact(intermediate_dimension({0.4, 0.7}, 0.0).value, 1.0,
        "intermediate theta=0");
  exact(intermediate_dimension({1.2, 1.5}, 0.5).value, 1.0,
        "intermediate p>=1");
  exact(box_dimension({0.4, 0.7}).value, 2.3 / 1.7, "box (0.4,0.7)");
  exact(box_dimension({0.5, 0.5}).value, 2.0 / 1.5, "box (0.5,0.5)");
  exact(box_dimension({1.0, 2.0}).value, 1.0, "box (1,2)");
  exact(assouad_spectrum({0.4, 0.7}, 0.1).value, 2.3 / (1.7 * 0.9),
        "spectrum branch 1");
  exact(assouad_spectrum({0.4, 0.7}, 0.3).value, (2.7 - 0.51) / (1.7 * 0.7),
        "spectrum branch 2");
  exact(assouad_spectrum({0.4, 0.7}, 0.5).value, 2.0, "spectrum branch 3");
  exact(profile_upper_bound({0.4, 0.6}, 0.7, 1.0).value, 0.7 * 2.2 / 1.3,
        "profile (0.4,0.6,alpha=0.7,theta=1)");
  exact(profile_upper_bound({0.4, 0.6}, 0.4, 0.5).value, 0.8,
        "profile alpha<=1/2");
  exact(box_dim_bound({{0.4, 0.7}, {0.2, 0.3}}), 2.99 / 3.57,
        "box bound (0.4,0.7)->(0.2,0.3)");
  exact(box_dim_bound({{1.5, 2.0}, {0.5, 0.5}}), 1.5 / 2.0,
        "box bound p>1 branch");
  exact(profile_bound({{0.5, 0.5}, {0.25, 0.25}}), 0.75,
        "profile bound hyperbolic pair");
  exact(profile_bound({{0.4, 0.7}, {0.2, 0.3}}), 1.73 / 2.31,
        "profile bound (0.4,0.7)->(0.2,0.3)");
  exact(hyperbolic_bound(0.5, 0.25), 0.75, "hyperbolic (0.5,0.25)");
  exact(hyperbolic_bound(0.8, 0.2), 0.625, "hyperbolic (0.8,0.2)");
  exact(phase_transitions({0.4, 0.7}).first, 4.0 / 17.0, "breakpoint 1");
  exact(phase_transitions({0.4, 0.7}).second, 7.0 / 17.0, "breakpoint 2");
  exact(holder_image_box_bound({1.5, 2.0}, 0.8, 0.6).value, 1.25,
        "holder image p>=1");
  exact(holder_image_box_bound({0.4, 0.7}, 1.0, 1.0).value, 2.3 / 1.7,
        "holder image identity at theta=1");
}

// ---- criterion 2: box-dimension estimation ----

double g_box_slope_0407 = 0.0;

void criterion2(Recorder& rec) {
  const CoverLadder steep = estimate_box_dimension(
      {0.4, 0.7}, std::exp2(-15), std::exp2(-7), 9);
  g_box_slope_0407 = steep.fit.slope;
  rec.close(steep.fit.slope, 1.3529411764705883, 0.05,
            "box estimate (0.4,0.7) over 2^-7..2^-15");
  // the p >= 1 family's truncated length series converges logarithmically
  // slowly, so its slope needs deeper scales to settle (oracle-checked)
  EstimatorOptions deep;
  deep.point_budget = 2'000'000'000ull;
  const CoverLadder flat = estimate_box_dimension(
      {1.2, 1.2}, std::exp2(-23), std::exp2(-15), 9, deep);
  rec.close(flat.fit.slope, 1.0, 0.05,
            "box estimate (1.2,1.2) over 2^-15..2^-23");
}

// ---- criterion 3: Assouad spectrum estimation, one theta per branch ----

std::vector<double> acceptance_assouad_ladder() {
  std::vector<double> ladder;
  for (int e = 8; e <= 16; e += 2) ladder.push_back(std::exp2(-e));
  return ladder;
}

void criterion3(Recorder& rec) {
  const SpiralParams pq{0.4, 0.7};
  const std::vector<double> ladder = acceptance_assouad_ladder();
  const double targets[3][2] = {{0.1, 1.5032679738562091},
                                {0.3, 1.8403361344537815},
                                {0.5, 2.0}};
  for (const auto& [theta, target] : targets) {
    const CoverLadder fit = estimate_assouad_spectrum(pq, theta, ladder);
    std::ostringstream os;
    os << "spectrum estimate at theta=" << theta;
    rec.close(fit.fit.slope, target, 0.1, os.str());
  }
}

// ---- criterion 4: phase transitions ----

void criterion4(Recorder& rec) {
  const SpiralParams pq{0.4, 0.7};
  const auto [t1, t2] = phase_transitions(pq);
  const double h = 1e-7;
  for (double bp : {t1, t2}) {
    const double at = assouad_spectrum(pq, bp).value;
    const double left = (at - assouad_spectrum(pq, bp - h).value) / h;
    const double right = (assouad_spectrum(pq, bp + h).value - at) / h;
    rec.require(std::abs(left - right) > 0.1,
                "one-sided derivatives coincide at a breakpoint");
  }

  const std::vector<double> ladder = acceptance_assouad_ladder();
  for (double bp : {t1, t2})
    for (double side : {-0.05, 0.05}) {
      const double theta = bp + side;
      const double target = assouad_spectrum(pq, theta).value;
      const CoverLadder fit = estimate_assouad_spectrum(pq, theta, ladder);
      std::ostringstream os;
      os << "estimator bracket at theta=" << theta;
      rec.close(fit.fit.slope, target, 0.1, os.str());
    }
}

// ---- criterion 5: intermediate-dimension estimation ----

void criterion5(Recorder& rec) {
  const SpiralParams pq{0.4, 0.7};
  std::vector<double> ladder;
  for (int e = 8; e <= 16; e += 2) ladder.push_back(std::exp2(-e));
  const double est = estimate_intermediate_dimension(pq, 0.5, ladder).value;
  // closed form (p+q+2*theta*(1-p))/(p+q+theta*(1-p)) = 1.7/1.4
  rec.close(est, 1.7 / 1.4, 0.05, "critical-s bisection at theta=0.5");

  const double at_one = estimate_intermediate_dimension(pq, 1.0, ladder).value;
  rec.close(at_one, g_box_slope_0407, 0.1,
            "theta=1 bisection vs box-estimate slope");
}

// ---- criterion 6: mass-distribution property ----

void criterion6(Recorder& rec) {
  const SpiralParams pq{0.4, 0.7};
  const double theta = 0.5;
  std::vector<double> masses, log_ratios, log_deltas;
  // 10^5 windows per scale: the worst-case ratio is a max statistic and
  // needs the tail sampled evenly across the wider size range at 2^-20
  for (int e : {12, 16, 20}) {
    const MassCheckReport report = mass_distribution_check(
        pq, theta, std::exp2(-e), 100000, 20260809 + e);
    masses.push_back(report.distribution.total_mass);
    log_ratios.push_back(std::log(report.worst_ratio));
    log_deltas.push_back(std::log(std::exp2(-e)));
  }
  const double mmin = std::min({masses[0], masses[1], masses[2]});
  const double mmax = std::max({masses[0], masses[1], masses[2]});
  rec.require(mmax / mmin <= 1.4,
              "total mass drifts more than +/-20% across the ladder");
  rec.require(mmin > 0.0, "total mass vanished");

  const LineFit trend = fit_line(log_deltas, log_ratios);
  rec.close(trend.slope, 0.0, 0.1,
            "log worst-ratio trend across the delta ladder");
}

// ---- criterion 7: Holder-bound dominance over the grid ----

void criterion7(Recorder& rec) {
  int violations = 0, informative = 0;
  for (int pi = 1; pi <= 19; ++pi)
    for (int qi = pi; qi <= 19; ++qi)
      for (int ri = 1; ri <= 19; ++ri)
        for (int si = ri; si <= 19; ++si) {
          const double p = pi * 0.05, q = qi * 0.05;
          const double r = ri * 0.05, s = si * 0.05;
          const double box =
              (2 + q - p) * (1 + s) / ((2 + s - r) * (1 + q));
          const double prof =
              (p + q + r + s - p * r + q * s) / ((2 + s - r) * (p + q));
          if (box < 1.0 - 1e-9) {
            ++informative;
            if (!(prof < box)) ++violations;
          } else if (!(prof >= 1.0 - 1e-9)) {
            ++violations;
          }
        }
  rec.require(violations == 0,
              "profile bound failed strict dominance " +
                  std::to_string(violations) + " times");
  rec.require(informative > 10000, "dominance grid unexpectedly small");
}

// ---- criterion 8: fBm experiment ----

void criterion8(Recorder& rec) {
  const SpiralParams pq{0.4, 0.6};
  const double alpha = 0.7;
  std::vector<double> ladder;
  for (int e = 1; e <= 4; ++e) ladder.push_back(std::exp2(-e));
  const ImageDimReport report =
      image_box_dimension_experiment(pq, alpha, 20, ladder, 501);
  rec.require(report.failures == 0, "fBm draws failed");
  rec.require(report.mean_slope <= 1.842,
              "mean image slope " + std::to_string(report.mean_slope) +
                  " above the bound 1.842");

  // increment-variance oracle: 20 fixed pairs, 500 seeds, both components
  std::vector<PlanePoint> sites;
  std::uint64_t state = 42;
  for (int i = 0; i < 25; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double u = (state >> 11) * 0x1.0p-53;
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double v = (state >> 11) * 0x1.0p-53;
    sites.push_back({(0.05 + 0.5 * u) * std::cos(kTwoPi * v),
                     (0.05 + 0.5 * u) * std::sin(kTwoPi * v)});
  }
  FbmSampler sampler(sites, alpha);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < 20; ++i) pairs.push_back({i, (i + 7) % 25});
  std::vector<double> sum_sq(pairs.size(), 0.0);
  const int seeds = 500;
  for (int s = 0; s < seeds; ++s) {
    const FbmField f = sampler.draw(31337 + s);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const auto [a, b] = pairs[j];
      const double dx = f.values[a].x - f.values[b].x;
      const double dy = f.values[a].y - f.values[b].y;
      sum_sq[j] += dx * dx + dy * dy;
    }
  }
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto [a, b] = pairs[j];
    const double dist =
        std::hypot(sites[a].x - sites[b].x, sites[a].y - sites[b].y);
    const double expected = std::pow(dist, 2 * alpha);
    const double var = sum_sq[j] / (2.0 * seeds);
    std::ostringstream os;
    os << "increment variance, pair " << j;
    rec.close(var / expected, 1.0, 0.10, os.str());
  }
}

// ---- criterion 9: byte-identical reruns through the CLI ----

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

void criterion9(Recorder& rec) {
  if (g_cli_path.empty()) {
    rec.require(false, "CLI path not provided (--cli or SPIRALDIM_CLI)");
    return;
  }
  fs::create_directories(g_scratch);
  struct Job {
    std::string name;
    std::string args;  // %OUT% replaced per run
    std::string artifact;
  };
  const std::vector<Job> jobs = {
      {"estimate-box",
       "estimate-box --p 0.4 --q 0.7 --delta-min 0.0009765625 --delta-max "
       "0.015625 --levels 5 --out %OUT%/ladder.csv --report %OUT%/fit.json",
       "ladder.csv"},
      {"mass-check",
       "mass-check --p 0.4 --q 0.7 --theta 0.5 --delta 0.0009765625 "
       "--trials 300 --seed 777 --out %OUT%/mass.json",
       "mass.json"},
      {"dims",
       "dims --p 0.1 --q 0.8 --theta-grid 0:1:0.05 --out %OUT%/dims.csv",
       "dims.csv"},
      {"fbm",
       "fbm --p 0.4 --q 0.6 --alpha 0.7 --seeds 3 --seed 11 --sites 400 "
       "--delta-min 0.0625 --delta-max 0.5 --levels 4 --out %OUT%/fbm.json "
       "--cloud %OUT%/cloud.csv",
       "fbm.json"},
  };
  for (const Job& job : jobs) {
    bool identical = true;
    std::string first;
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = g_scratch / (job.name + std::to_string(run));
      fs::create_directories(dir);
      std::string args = job.args;
      std::string::size_type pos;
      while ((pos = args.find("%OUT%")) != std::string::npos)
        args.replace(pos, 5, dir.string());
      if (run_cli(args) != 0) {
        rec.require(false, job.name + ": CLI run failed");
        identical = false;
        break;
      }
      const std::string bytes = slurp(dir / job.artifact);
      if (run == 0)
        first = bytes;
      else
        identical = identical && !bytes.empty() && bytes == first;
    }
    rec.require(identical, job.name + ": artifacts differ between reruns");
  }
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) g_cli_path = argv[++i];
  }
  if (g_cli_path.empty())
    if (const char* env = std::getenv("SPIRALDIM_CLI")) g_cli_path = env;
  g_scratch = fs::temp_directory_path() /
              ("spiraldim_acceptance_" + std::to_string(::getpid()));

  struct Criterion {
    int id;
    std::string label;
    std::function<void(Recorder&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "closed-form suite reproduces hand values to 1e-12", criterion1},
      {2, "box-dimension estimates within 0.05 of the closed forms",
       criterion2},
      {3, "Assouad spectrum estimates within 0.1, one theta per branch",
       criterion3},
      {4, "phase transitions: kinks and estimator brackets", criterion4},
      {5, "intermediate-dimension bisection within 0.05", criterion5},
      {6, "mass distribution: stable total mass, bounded window ratios",
       criterion6},
      {7, "profile bound strictly dominates the box bound on the grid",
       criterion7},
      {8, "fBm image slopes below the bound; increment oracle within 10%",
       criterion8},
      {9, "identical config and seed give byte-identical artifacts",
       criterion9},
  };

  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Recorder rec;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(rec);
    } catch (const std::exception& e) {
      rec.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (rec.failures.empty()) {
      std::printf("PASS  criterion %d: %s (%.1fs)\n", criterion.id,
                  criterion.label.c_str(), secs);
    } else {
      ++failed;
      std::printf("FAIL  criterion %d: %s (%.1fs)\n", criterion.id,
                  criterion.label.c_str(), secs);
      for (const std::string& f : rec.failures)
        std::printf("      - %s\n", f.c_str());
    }
    std::fflush(stdout);
  }
  std::error_code ec;
  fs::remove_all(g_scratch, ec);
  return failed;
}
