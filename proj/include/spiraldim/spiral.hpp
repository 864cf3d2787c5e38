#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spiraldim {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Thrown when a sampling request would exceed its point budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decay exponents (p, q) of the spiral t -> (t^-p cos t, t^-q sin t),
/// 0 < p <= q. p = q gives the hyperbolic special case.
struct SpiralParams {
  double p;
  double q;

  SpiralParams(double p_, double q_) : p(p_), q(q_) {
    if (!(p > 0.0) || !(q >= p) || !std::isfinite(p) || !std::isfinite(q))
      throw std::invalid_argument("SpiralParams: need 0 < p <= q, finite");
  }
};

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

/// One sampled point, parameter included so arcs serialize as (t, x, y).
struct ArcPoint {
  double t;
  double x;
  double y;
};

/// Polyline sample of a curve (or of a family of closed curves). Chords
/// between consecutive points within a segment are <= max_chord; segment
/// boundaries mark jumps between disconnected components.
struct SampledArc {
  std::vector<ArcPoint> points;
  std::vector<std::size_t> segment_starts{0};
  double max_chord = 0.0;
};

struct SampleOptions {
  std::uint64_t point_budget = 100'000'000;  // keeps desk-scale runs short
};

/// Point of the spiral at parameter t >= 2*pi.
PlanePoint point_at(const SpiralParams& params, double t);

/// Two-sided bracket [(2*pi*k)^-p, 8*(2*pi*k)^-p] for the length of turn k.
std::pair<double, double> turn_length_bounds(const SpiralParams& params,
                                             std::int64_t k);

/// Closed comparison value for sum_{k=M..N} of turn lengths:
/// (N^(1-p) - M^(1-p))/(1-p) for p < 1, log(N/M) for p = 1,
/// (M^(1-p) - N^(1-p))/(p-1) for p > 1. Two-sided up to p-dependent factors.
double turn_length_sum(const SpiralParams& params, std::int64_t M,
                       std::int64_t N);

/// Uniform lower bound q/M^(1+q) on the axis separation of turns k-1 and k,
/// valid (up to p,q-constants) for all 2 <= k <= M.
double turn_gap_lower_bound(const SpiralParams& params, std::int64_t k,
                            std::int64_t M);

/// Sharper per-turn form q/k^(1+q) of the same bound.
double turn_gap_lower_bound(const SpiralParams& params, std::int64_t k);

/// Parameter step used on turn k so chords stay below max_chord:
/// dt = max_chord * (2*pi*k)^p / 4, from speed <= ~(2*pi*k)^-p on the turn.
double turn_parameter_step(const SpiralParams& params, std::int64_t k,
                           double max_chord);

/// Adaptive polyline over turns k_min..k_max (parameter [2*pi*k_min,
/// 2*pi*(k_max+1)], closing point included).
SampledArc sample_spiral(const SpiralParams& params, std::int64_t k_min,
                         std::int64_t k_max, double max_chord,
                         const SampleOptions& options = {});

/// Polyline samples of the concentric-ellipse family: for n = 1..n_max the
/// ellipse with semi-axes ((2*pi*n)^-p, (2*pi*n)^-q). One segment per ellipse.
SampledArc ellipse_family_points(const SpiralParams& params,
                                 std::int64_t n_max, double max_chord,
                                 const SampleOptions& options = {});

/// Sum of chord lengths, skipping jumps between segments.
double polyline_length(const SampledArc& arc);

/// `count` sites spread over turns 1..k_max at equal arc-length spacing.
std::vector<PlanePoint> equidistributed_sites(const SpiralParams& params,
                                              std::int64_t k_max,
                                              std::size_t count);

/// CSV with header "t,x,y"; shortest round-trip float formatting.
void write_csv(const SampledArc& arc, std::ostream& out);

/// Little-endian IEEE-754 doubles, (t, x, y) triples, no framing.
void write_binary(const SampledArc& arc, std::ostream& out);

/// Reads a triple stream; max_chord is recomputed from the points.
SampledArc read_binary(std::istream& in);

}  // namespace spiraldim
