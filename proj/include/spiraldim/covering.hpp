#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spiraldim/fit.hpp"
#include "spiraldim/formulas.hpp"
#include "spiraldim/grid.hpp"
#include "spiraldim/spiral.hpp"

namespace spiraldim {

struct CoverEntry {
  double delta;
  std::uint64_t count;
};

/// A scale ladder of cover counts with its log-log regression. The fit
/// abscissa is log(1/delta) for box ladders and log(delta^theta/delta) for
/// localized (Assouad) ladders; entries are strictly decreasing in delta and
/// nondecreasing in count.
struct CoverLadder {
  std::vector<CoverEntry> entries;
  LineFit fit;
};

/// Turn indices delimiting the localized cover at (delta, theta): L_p/L_q are
/// the last turns separated by at least delta on the horizontal/vertical
/// axis, l_p/l_q the first turns entering the window of radius delta^theta on
/// each axis. A value of 0 for L_p/L_q means no turn is delta-separated
/// (delta too coarse).
struct WindowIndices {
  std::int64_t L_p;
  std::int64_t L_q;
  std::int64_t l_p;
  std::int64_t l_q;
};

enum class WindowShape {
  Auto,    // square in the middle spectrum branch (as in the cover
           // construction), ball elsewhere
  Square,  // D(0, delta^theta)
  Ball,    // B(0, delta^theta)
};

enum class CellCountMethod {
  Auto,       // sampled when cheap, crossing count beyond the point cap
  Sampled,    // chord-bounded lattice points on the grid
  Crossings,  // exact monotone-piece grid-line crossing count
};

struct EstimatorOptions {
  double chord_factor = 0.5;  // sampling chord = chord_factor * delta
  std::uint64_t point_budget = 100'000'000;
  double anchor_x = 0.0;
  double anchor_y = 0.0;
  WindowShape window = WindowShape::Auto;
  CellCountMethod cell_method = CellCountMethod::Auto;
  double s_tolerance = 1e-3;  // bisection width for the critical exponent
  double fit_r2_min = 0.99;   // required linearity of the decay fits
};

/// Grid cells covered by one full turn at scale delta (used for the fine
/// side of two-scale covers).
std::uint64_t turn_cell_count(const SpiralParams& params, std::int64_t k,
                              double delta,
                              const EstimatorOptions& options = {});

struct LocalCoverCount {
  std::uint64_t numeric;  // grid count of the window-restricted spiral
  double analytic;        // the three-part cover sum from the construction
  WindowIndices windows;
  std::string branch;
};

/// Two-scale cover of the spiral for the intermediate-dimension estimate:
/// turns 1..cutoff covered at scale delta^(1/alpha), the remaining tail
/// rectangle tiled at scale delta^theta.
struct TwoScaleCover {
  double theta;
  double delta;
  double alpha;
  double s_build;  // exponent the cutoff was built for
  std::int64_t cutoff;
  std::uint64_t fine_boxes;
  std::uint64_t coarse_boxes;

  /// Cover cost sum |U_i|^s = coarse * delta^(theta*s) + fine * delta^s.
  double s_cost(double s) const;
};

/// Per-turn measure weights delta^(s-1) * length(turn k), k = 1..cutoff.
struct MassDistribution {
  double delta;
  double s;
  std::int64_t cutoff;
  std::vector<double> weights;
  double total_mass;
};

struct MassWindow {
  double cx = 0.0, cy = 0.0;  // window center
  double diameter = 0.0;
  double mass = 0.0;
  double ratio = 0.0;  // mass / diameter^s
};

struct MassCheckReport {
  MassDistribution distribution;
  std::size_t trials;
  std::uint64_t seed;
  double worst_ratio;
  MassWindow worst;
};

/// Geometric scale ladder from delta_max down to delta_min, `levels` entries.
std::vector<double> geometric_ladder(double delta_min, double delta_max,
                                     int levels);

WindowIndices window_indices(const SpiralParams& params, double delta,
                             double theta);

/// Whole-spiral cover count at one scale: turns up to the last
/// delta-separated turn sampled on the grid, the inner tail counted as a
/// full rectangle of cells (the union is exact).
std::uint64_t box_cover_count(const SpiralParams& params, double delta,
                              const EstimatorOptions& options = {});

/// Grid counts of the spiral over a scale ladder: turns up to the last
/// delta-separated turn are sampled, the inner tail is covered as a full
/// rectangle of cells; the fitted slope of log(count) vs log(1/delta)
/// estimates the box dimension.
CoverLadder estimate_box_dimension(const SpiralParams& params,
                                   double delta_min, double delta_max,
                                   int levels,
                                   const EstimatorOptions& options = {});

/// Numeric and analytic cover counts of the spiral inside the window of
/// radius delta^theta at the origin.
LocalCoverCount local_cover_count(const SpiralParams& params, double delta,
                                  double theta,
                                  const EstimatorOptions& options = {});

/// Regression of log(local cover count) against log(delta^theta/delta) over
/// the given scales; the slope estimates the Assouad spectrum at theta.
CoverLadder estimate_assouad_spectrum(const SpiralParams& params, double theta,
                                      std::span<const double> deltas,
                                      const EstimatorOptions& options = {});

TwoScaleCover two_scale_cover(const SpiralParams& params, double theta,
                              double delta, double s, double alpha,
                              const EstimatorOptions& options = {});

/// Critical exponent where the fitted decay rate of the two-scale cover cost
/// crosses zero along the ladder (bisection over s).
DimensionValue estimate_intermediate_dimension(
    const SpiralParams& params, double theta, std::span<const double> deltas,
    const EstimatorOptions& options = {});

/// Builds the measure of the lower-bound argument and probes it with random
/// admissible windows: reports total mass and the worst mass/|U|^s ratio.
MassCheckReport mass_distribution_check(const SpiralParams& params,
                                        double theta, double delta,
                                        std::size_t trials, std::uint64_t seed,
                                        const EstimatorOptions& options = {});

}  // namespace spiraldim
