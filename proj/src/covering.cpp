#include "spiraldim/covering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "spiraldim/rng.hpp"

namespace spiraldim {

namespace {

// Axis gap between turn L and L+1: (off + 2piL)^-t - (off + 2pi(L+1))^-t,
// written via expm1/log1p so the difference survives cancellation.
double axis_gap(double exponent, double offset, std::int64_t L) {
  const double a = offset + kTwoPi * static_cast<double>(L);
  return std::pow(a, -exponent) *
         (-std::expm1(-exponent * std::log1p(kTwoPi / a)));
}

// Largest L >= 1 with axis_gap(L) >= delta; 0 if already gap(1) < delta.
std::int64_t max_separated_index(double exponent, double offset,
                                 double delta) {
  if (axis_gap(exponent, offset, 1) < delta) return 0;
  std::int64_t lo = 1, hi = 2;
  while (axis_gap(exponent, offset, hi) >= delta) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (axis_gap(exponent, offset, mid) >= delta ? lo : hi) = mid;
  }
  return lo;
}

// Minimal l >= 1 with (off + 2pi l)^-t <= w.
std::int64_t min_entering_index(double exponent, double offset, double w) {
  const double target = std::pow(w, -1.0 / exponent);
  const double raw = (target - offset) / kTwoPi;
  std::int64_t l = 1;
  if (raw > 1.0) l = static_cast<std::int64_t>(raw);  // start just below
  while (std::pow(offset + kTwoPi * static_cast<double>(l), -exponent) > w)
    ++l;
  while (l > 1 &&
         std::pow(offset + kTwoPi * static_cast<double>(l - 1), -exponent) <=
             w)
    --l;
  return l;
}

std::int64_t lattice_steps(const SpiralParams& params, std::int64_t k,
                           double chord) {
  const double dt = turn_parameter_step(params, k, chord);
  const double n = std::ceil(kTwoPi / dt);
  return n < 1.0 ? 1 : static_cast<std::int64_t>(n);
}

// Visits the full sampling lattice of turn k (i = 0..n-1; the turn's closing
// point belongs to the next turn's lattice).
template <class F>
void visit_turn(const SpiralParams& params, std::int64_t k, double chord,
                F&& emit) {
  const std::int64_t n = lattice_steps(params, k, chord);
  const double t0 = kTwoPi * static_cast<double>(k);
  const double step = kTwoPi / static_cast<double>(n);
  for (std::int64_t i = 0; i < n; ++i)
    emit(t0 + step * static_cast<double>(i));
}

// Visits the subset of turn k's lattice whose points can satisfy |x| <= w:
// |cos t| <= w * t^p is necessary, so only the lattice indices around the
// vertical-axis crossings are generated. Lattice points agree exactly with
// visit_turn so window counts stay subsets of global counts.
template <class F>
void visit_turn_near_window(const SpiralParams& params, std::int64_t k,
                            double chord, double w, F&& emit) {
  const std::int64_t n = lattice_steps(params, k, chord);
  const double t0 = kTwoPi * static_cast<double>(k);
  const double step = kTwoPi / static_cast<double>(n);
  const double cbound =
      w * std::pow(kTwoPi * static_cast<double>(k + 1), params.p);
  if (cbound >= 1.0) {
    for (std::int64_t i = 0; i < n; ++i)
      emit(t0 + step * static_cast<double>(i));
    return;
  }
  const double phi0 = std::acos(cbound);
  const double ranges[2][2] = {{phi0, kPi - phi0},
                               {kPi + phi0, kTwoPi - phi0}};
  for (const auto& range : ranges) {
    std::int64_t i0 =
        static_cast<std::int64_t>(std::floor(range[0] / step)) - 1;
    std::int64_t i1 = static_cast<std::int64_t>(std::ceil(range[1] / step)) + 1;
    i0 = std::max<std::int64_t>(i0, 0);
    i1 = std::min<std::int64_t>(i1, n - 1);
    for (std::int64_t i = i0; i <= i1; ++i)
      emit(t0 + step * static_cast<double>(i));
  }
}

struct WindowFilter {
  double w;
  bool ball;
  bool contains(double x, double y) const {
    if (ball) return x * x + y * y <= w * w;
    return std::abs(x) <= w && std::abs(y) <= w;
  }
};

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("delta must lie in (0, 1)");
}

void check_ladder_invariants(const CoverLadder& ladder) {
  for (std::size_t i = 1; i < ladder.entries.size(); ++i) {
    if (!(ladder.entries[i].delta < ladder.entries[i - 1].delta))
      throw std::logic_error("cover ladder: scales must strictly decrease");
    if (ladder.entries[i].count < ladder.entries[i - 1].count)
      throw std::logic_error("cover ladder: counts must not decrease");
  }
}

LineFit fit_ladder(const CoverLadder& ladder,
                   const std::function<double(double)>& abscissa) {
  std::vector<double> xs, ys;
  xs.reserve(ladder.entries.size());
  ys.reserve(ladder.entries.size());
  for (const CoverEntry& e : ladder.entries) {
    xs.push_back(abscissa(e.delta));
    ys.push_back(std::log(static_cast<double>(e.count)));
  }
  return fit_line(xs, ys);
}

// Newton root of fn near `guess`, derivative dfn; used for the in-turn
// coordinate extrema.
double newton_root(const std::function<double(double)>& fn,
                   const std::function<double(double)>& dfn, double guess) {
  double t = guess;
  for (int i = 0; i < 12; ++i) {
    const double f = fn(t);
    const double d = dfn(t);
    if (d == 0.0) break;
    const double next = t - f / d;
    if (std::abs(next - t) < 1e-13 * t) return next;
    t = next;
  }
  return t;
}

// Exact-to-O(1) count of grid cells crossed by turn k at scale delta: the
// turn splits into monotone pieces at its four coordinate extrema, and a
// monotone piece crosses |di| + |dj| + 1 cells.
std::uint64_t turn_cells_by_crossings(const SpiralParams& params,
                                      std::int64_t k, double delta,
                                      double anchor_x, double anchor_y) {
  const double p = params.p, q = params.q;
  const double t0 = kTwoPi * static_cast<double>(k);
  const double t1 = t0 + kTwoPi;

  auto fx = [&](double t) { return p * std::cos(t) + t * std::sin(t); };
  auto dfx = [&](double t) {
    return (1.0 - p) * std::sin(t) + t * std::cos(t);
  };
  auto fy = [&](double t) { return q * std::sin(t) - t * std::cos(t); };
  auto dfy = [&](double t) {
    return (q - 1.0) * std::cos(t) + t * std::sin(t);
  };

  std::vector<double> breaks = {t0, t1};
  const double xg[2] = {t0 + kPi, t1};           // x-extrema guesses
  const double yg[2] = {t0 + kPi / 2, t0 + 1.5 * kPi};  // y-extrema guesses
  for (double g : xg) {
    const double r = newton_root(fx, dfx, g - p / g);
    if (r > t0 && r < t1) breaks.push_back(r);
  }
  for (double g : yg) {
    const double r = newton_root(fy, dfy, g - q / g);
    if (r > t0 && r < t1) breaks.push_back(r);
  }
  std::sort(breaks.begin(), breaks.end());

  auto cell_x = [&](double t) {
    return static_cast<std::int64_t>(
        std::floor((std::pow(t, -p) * std::cos(t) - anchor_x) / delta));
  };
  auto cell_y = [&](double t) {
    return static_cast<std::int64_t>(
        std::floor((std::pow(t, -q) * std::sin(t) - anchor_y) / delta));
  };

  std::uint64_t cells = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    cells += static_cast<std::uint64_t>(std::llabs(cell_x(b) - cell_x(a))) +
             static_cast<std::uint64_t>(std::llabs(cell_y(b) - cell_y(a))) + 1;
  }
  cells -= breaks.size() - 2;  // junction cells shared by adjacent pieces
  return cells;
}

}  // namespace

// Sampled when cheap, crossing-count otherwise (the two agree up to
// cell-boundary clips).
std::uint64_t turn_cell_count(const SpiralParams& params, std::int64_t k,
                              double delta, const EstimatorOptions& options) {
  require_delta(delta);
  const double chord = options.chord_factor * delta;
  constexpr std::int64_t kSampleCap = 2'000'000;
  const bool crossings =
      options.cell_method == CellCountMethod::Crossings ||
      (options.cell_method == CellCountMethod::Auto &&
       lattice_steps(params, k, chord) > kSampleCap);
  if (crossings)
    return turn_cells_by_crossings(params, k, delta, options.anchor_x,
                                   options.anchor_y);
  GridCounter counter(delta, options.anchor_x, options.anchor_y);
  visit_turn(params, k, chord, [&](double t) {
    counter.insert(std::pow(t, -params.p) * std::cos(t),
                   std::pow(t, -params.q) * std::sin(t));
  });
  // closing point, so the count covers the half-open turn's closure
  const double te = kTwoPi * static_cast<double>(k + 1);
  counter.insert(std::pow(te, -params.p) * std::cos(te),
                 std::pow(te, -params.q) * std::sin(te));
  return counter.unique_count();
}

namespace {

double fine_turn_length(const SpiralParams& params, std::int64_t k,
                        int steps = 4096) {
  const double t0 = kTwoPi * static_cast<double>(k);
  const double dt = kTwoPi / steps;
  double len = 0.0;
  double px = std::pow(t0, -params.p) * std::cos(t0);
  double py = std::pow(t0, -params.q) * std::sin(t0);
  for (int i = 1; i <= steps; ++i) {
    const double t = t0 + dt * i;
    const double x = std::pow(t, -params.p) * std::cos(t);
    const double y = std::pow(t, -params.q) * std::sin(t);
    len += std::hypot(x - px, y - py);
    px = x;
    py = y;
  }
  return len;
}

// Inverts the position angle psi(t) = atan2(y(t), x(t)) on turn k; psi is a
// strictly increasing bijection of the turn onto [0, 2pi), and stays in the
// same quadrant as the parameter phase t - 2pi*k.
double param_for_angle(const SpiralParams& params, std::int64_t k,
                       double angle) {
  const double t0 = kTwoPi * static_cast<double>(k);
  double lo = t0, hi = t0 + kTwoPi;
  for (int i = 0; i < 50; ++i) {
    const double mid = 0.5 * (lo + hi);
    double psi = std::atan2(std::pow(mid, -params.q) * std::sin(mid),
                            std::pow(mid, -params.p) * std::cos(mid));
    if (psi < 0.0) psi += kTwoPi;
    (psi < angle ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Square {
  double x0, x1, y0, y1;
  bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

// Length of turn k inside the square, by midpoint-rule polyline clipping
// over the angular range the square subtends from the origin.
double turn_length_in_square(const SpiralParams& params, std::int64_t k,
                             const Square& sq) {
  const double t0 = kTwoPi * static_cast<double>(k);
  const double side = sq.x1 - sq.x0;

  // quick reject in the elliptic norm of turn k: the turn lies in the
  // annulus rho in [(k/(k+1))^q, 1]
  const double tp = std::pow(t0, params.p);
  const double tq = std::pow(t0, params.q);
  const double u0 = sq.x0 * tp, u1 = sq.x1 * tp;
  const double v0 = sq.y0 * tq, v1 = sq.y1 * tq;
  const double du = std::max({u0, -u1, 0.0});
  const double dv = std::max({v0, -v1, 0.0});
  const double rho_min = std::hypot(du, dv);
  const double rho_max = std::hypot(std::max(std::abs(u0), std::abs(u1)),
                                    std::max(std::abs(v0), std::abs(v1)));
  const double inner = std::pow(static_cast<double>(k) / (k + 1), params.q);
  if (rho_min > 1.0 || rho_max < inner) return 0.0;

  // parameter ranges covering the square's angular span; two pieces when the
  // span wraps through angle 0 (the turn start)
  std::vector<std::pair<double, double>> ranges;
  if (rho_min == 0.0) {
    ranges.emplace_back(t0, t0 + kTwoPi);
  } else {
    const double cx = 0.5 * (sq.x0 + sq.x1), cy = 0.5 * (sq.y0 + sq.y1);
    const double base = std::atan2(cy, cx);
    double lo = 0.0, hi = 0.0;
    const double corners[4][2] = {
        {sq.x0, sq.y0}, {sq.x0, sq.y1}, {sq.x1, sq.y0}, {sq.x1, sq.y1}};
    for (const auto& c : corners) {
      double off = std::atan2(c[1], c[0]) - base;
      while (off > kPi) off -= kTwoPi;
      while (off < -kPi) off += kTwoPi;
      lo = std::min(lo, off);
      hi = std::max(hi, off);
    }
    double a0 = base + lo, a1 = base + hi;
    while (a0 < 0.0) {
      a0 += kTwoPi;
      a1 += kTwoPi;
    }
    if (a1 < kTwoPi) {
      ranges.emplace_back(param_for_angle(params, k, a0),
                          param_for_angle(params, k, a1));
    } else {
      ranges.emplace_back(t0, param_for_angle(params, k, a1 - kTwoPi));
      ranges.emplace_back(param_for_angle(params, k, a0), t0 + kTwoPi);
    }
  }

  const double chord = side / 16.0;
  double len = 0.0;
  for (auto [ta, tb] : ranges) {
    // pad covers inversion tolerance; stays inside the turn so adjacent
    // turns never claim the same length
    const double pad =
        std::max(0.05 * (tb - ta), chord * std::pow(t0, params.p));
    ta = std::max(t0, ta - pad);
    tb = std::min(t0 + kTwoPi, tb + pad);
    double dt = turn_parameter_step(params, k, chord);
    const std::int64_t n = std::max<std::int64_t>(
        8, static_cast<std::int64_t>(std::ceil((tb - ta) / dt)));
    dt = (tb - ta) / static_cast<double>(n);
    double px = std::pow(ta, -params.p) * std::cos(ta);
    double py = std::pow(ta, -params.q) * std::sin(ta);
    for (std::int64_t i = 1; i <= n; ++i) {
      const double t = ta + dt * static_cast<double>(i);
      const double x = std::pow(t, -params.p) * std::cos(t);
      const double y = std::pow(t, -params.q) * std::sin(t);
      if (sq.contains(0.5 * (x + px), 0.5 * (y + py)))
        len += std::hypot(x - px, y - py);
      px = x;
      py = y;
    }
  }
  return len;
}

}  // namespace

std::vector<double> geometric_ladder(double delta_min, double delta_max,
                                     int levels) {
  if (!(delta_min > 0.0 && delta_min < delta_max && delta_max < 1.0))
    throw std::invalid_argument(
        "geometric_ladder: need 0 < delta_min < delta_max < 1");
  if (levels < 2) throw std::invalid_argument("geometric_ladder: levels >= 2");
  std::vector<double> ladder(levels);
  const double l0 = std::log2(delta_max), l1 = std::log2(delta_min);
  for (int i = 0; i < levels; ++i)
    ladder[i] = std::exp2(l0 + (l1 - l0) * i / (levels - 1));
  return ladder;
}

WindowIndices window_indices(const SpiralParams& params, double delta,
                             double theta) {
  require_delta(delta);
  if (!(theta >= 0.0 && theta < 1.0))
    throw std::invalid_argument("theta must lie in [0, 1)");
  const double w = std::pow(delta, theta);
  WindowIndices wi;
  wi.L_p = max_separated_index(params.p, kPi, delta);
  wi.L_q = max_separated_index(params.q, 1.5 * kPi, delta);
  wi.l_p = min_entering_index(params.p, kPi, w);
  wi.l_q = min_entering_index(params.q, 1.5 * kPi, w);
  return wi;
}

std::uint64_t box_cover_count(const SpiralParams& params, double delta,
                              const EstimatorOptions& options) {
  require_delta(delta);
  const std::int64_t K = std::max<std::int64_t>(
      1, max_separated_index(params.q, 1.5 * kPi, delta));
  const double chord = options.chord_factor * delta;

  std::uint64_t points = 1;
  for (std::int64_t k = 1; k <= K; ++k) {
    points += static_cast<std::uint64_t>(lattice_steps(params, k, chord));
    if (points > options.point_budget)
      throw BudgetError("box_cover_count: point budget exceeded");
  }

  std::vector<std::uint64_t> keys;
  GridCounter counter(delta, options.anchor_x, options.anchor_y);
  for (std::int64_t k = 1; k <= K; ++k) {
    visit_turn(params, k, chord, [&](double t) {
      counter.insert(std::pow(t, -params.p) * std::cos(t),
                     std::pow(t, -params.q) * std::sin(t));
    });
    counter.drain_into(keys);
  }
  const double te = kTwoPi * static_cast<double>(K + 1);
  counter.insert(std::pow(te, -params.p) * std::cos(te),
                 std::pow(te, -params.q) * std::sin(te));
  counter.drain_into(keys);
  const std::uint64_t unique = dedupe_cells(keys);

  // tail turns k > K live inside this rectangle; counted as a full block
  const double rx = std::pow(kTwoPi * static_cast<double>(K), -params.p);
  const double ry = std::pow(kTwoPi * static_cast<double>(K), -params.q);
  const CellRect rect = cell_rect(-rx, rx, -ry, ry, delta, options.anchor_x,
                                  options.anchor_y);
  return unique - count_cells_in(keys, rect) + rect.cell_count();
}

CoverLadder estimate_box_dimension(const SpiralParams& params,
                                   double delta_min, double delta_max,
                                   int levels,
                                   const EstimatorOptions& options) {
  if (levels < 4)
    throw std::invalid_argument("estimate_box_dimension: levels >= 4");
  const std::vector<double> ladder =
      geometric_ladder(delta_min, delta_max, levels);

  CoverLadder result;
  for (const double delta : ladder)
    result.entries.push_back({delta, box_cover_count(params, delta, options)});
  check_ladder_invariants(result);
  result.fit = fit_ladder(
      result, [](double d) { return std::log(1.0 / d); });
  return result;
}

LocalCoverCount local_cover_count(const SpiralParams& params, double delta,
                                  double theta,
                                  const EstimatorOptions& options) {
  require_delta(delta);
  const WindowIndices wi = window_indices(params, delta, theta);
  const double w = std::pow(delta, theta);
  const auto [theta1, theta2] = phase_transitions(params);

  std::string branch;
  bool ball;
  if (theta < theta1) {
    branch = "theta<p/(1+q)";
    ball = true;
  } else if (theta < theta2) {
    branch = "p/(1+q)<=theta<q/(1+q)";
    ball = false;
  } else {
    branch = "q/(1+q)<=theta";
    ball = true;
  }
  if (options.window == WindowShape::Square) ball = false;
  if (options.window == WindowShape::Ball) ball = true;
  const WindowFilter filter{w, ball};

  const double chord = options.chord_factor * delta;
  const std::int64_t k_lo = std::max<std::int64_t>(1, wi.l_q - 2);
  const std::int64_t k_hi = wi.L_q;

  // per-turn counters drained into one key vector: keeps the buffer near one
  // key per distinct cell even for billions of sample points
  std::vector<std::uint64_t> keys;
  GridCounter counter(delta, options.anchor_x, options.anchor_y);
  std::uint64_t evals = 0;
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    visit_turn_near_window(params, k, chord, w, [&](double t) {
      if (++evals > options.point_budget)
        throw BudgetError("local_cover_count: point budget exceeded");
      const double x = std::pow(t, -params.p) * std::cos(t);
      const double y = std::pow(t, -params.q) * std::sin(t);
      if (filter.contains(x, y)) counter.insert(x, y);
    });
    counter.drain_into(keys);
  }
  const std::uint64_t unique = dedupe_cells(keys);

  // inner tail (turns beyond L_q), clipped to the window square
  const std::int64_t K = std::max<std::int64_t>(1, wi.L_q);
  const double rx =
      std::min(std::pow(kTwoPi * static_cast<double>(K), -params.p), w);
  const double ry =
      std::min(std::pow(kTwoPi * static_cast<double>(K), -params.q), w);
  const CellRect rect = cell_rect(-rx, rx, -ry, ry, delta, options.anchor_x,
                                  options.anchor_y);

  LocalCoverCount out;
  out.windows = wi;
  out.branch = branch;
  out.numeric = unique - count_cells_in(keys, rect) + rect.cell_count();

  // three-part analytic sum: tail rectangle, whole turns, partial arcs
  const double Lq = static_cast<double>(K);
  double analytic = std::min(std::pow(Lq, -params.p), w) *
                    std::min(std::pow(Lq, -params.q), w) / (delta * delta);
  if (wi.l_p < wi.L_q)
    analytic += turn_length_sum(params, wi.l_p, wi.L_q) / delta;
  else if (wi.l_p == wi.L_q)
    analytic += std::pow(static_cast<double>(wi.l_p), -params.p) / delta;
  const std::int64_t arc_turns =
      std::max<std::int64_t>(0, std::min(wi.l_p, wi.L_q + 1) - wi.l_q);
  analytic += static_cast<double>(arc_turns) * std::pow(delta, theta - 1.0);
  out.analytic = analytic;
  return out;
}

CoverLadder estimate_assouad_spectrum(const SpiralParams& params, double theta,
                                      std::span<const double> deltas,
                                      const EstimatorOptions& options) {
  if (deltas.size() < 4)
    throw std::invalid_argument(
        "estimate_assouad_spectrum: need a ladder of >= 4 scales");
  std::vector<double> ladder(deltas.begin(), deltas.end());
  std::sort(ladder.begin(), ladder.end(), std::greater<>());

  CoverLadder result;
  for (const double delta : ladder) {
    const LocalCoverCount local = local_cover_count(params, delta, theta,
                                                    options);
    result.entries.push_back({delta, local.numeric});
  }
  check_ladder_invariants(result);
  result.fit = fit_ladder(result, [theta](double d) {
    return (1.0 - theta) * std::log(1.0 / d);
  });
  return result;
}

double TwoScaleCover::s_cost(double s) const {
  return static_cast<double>(coarse_boxes) * std::pow(delta, theta * s) +
         static_cast<double>(fine_boxes) * std::pow(delta, s);
}

TwoScaleCover two_scale_cover(const SpiralParams& params, double theta,
                              double delta, double s, double alpha,
                              const EstimatorOptions& options) {
  require_delta(delta);
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must lie in (0, 1]");
  if (!(s >= 0.0 && s <= 2.0))
    throw std::invalid_argument("s must lie in [0, 2]");
  if (!(alpha > 0.5 && alpha <= 1.0))
    throw std::domain_error(
        "two_scale_cover: alpha <= 1/2 degenerates (the bound is trivially 2)");

  const double t = -std::log(delta);
  const double exponent = (s - 1.0 / alpha + theta * (2.0 - s)) /
                          (1.0 - params.p + alpha * (params.p + params.q));
  const double m_real = std::exp(t * exponent);
  const std::int64_t M = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(m_real)));

  TwoScaleCover cover;
  cover.theta = theta;
  cover.delta = delta;
  cover.alpha = alpha;
  cover.s_build = s;
  cover.cutoff = M;

  const double fine_scale = std::pow(delta, 1.0 / alpha);
  std::uint64_t fine = 0;
  for (std::int64_t k = 1; k <= M; ++k)
    fine += turn_cell_count(params, k, fine_scale, options);
  cover.fine_boxes = fine;

  const double hx = std::pow(static_cast<double>(M), -params.p * alpha);
  const double hy = std::pow(static_cast<double>(M), -params.q * alpha);
  cover.coarse_boxes = cell_rect(-hx, hx, -hy, hy, std::pow(delta, theta),
                                 options.anchor_x, options.anchor_y)
                           .cell_count();
  return cover;
}

DimensionValue estimate_intermediate_dimension(
    const SpiralParams& params, double theta, std::span<const double> deltas,
    const EstimatorOptions& options) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must lie in (0, 1]");
  if (deltas.size() < 3)
    throw std::invalid_argument(
        "estimate_intermediate_dimension: need >= 3 scales");
  std::vector<double> ladder(deltas.begin(), deltas.end());
  std::sort(ladder.begin(), ladder.end(), std::greater<>());

  // fitted exponent e(s) of s_cost ~ delta^e along the ladder
  auto decay = [&](double s) {
    std::vector<double> xs, ys;
    xs.reserve(ladder.size());
    ys.reserve(ladder.size());
    for (const double delta : ladder) {
      const TwoScaleCover cover =
          two_scale_cover(params, theta, delta, s, 1.0, options);
      xs.push_back(std::log(delta));
      ys.push_back(std::log(cover.s_cost(s)));
    }
    return fit_line(xs, ys);
  };

  double lo = 0.8, hi = 2.0;
  const LineFit flo = decay(lo), fhi = decay(hi);
  if (!(flo.slope < 0.0 && fhi.slope > 0.0))
    throw std::runtime_error(
        "estimate_intermediate_dimension: ladder does not bracket the "
        "critical exponent");
  // linearity gate where the decay is genuinely nonzero
  if ((std::abs(flo.slope) > 0.05 && flo.r2 < options.fit_r2_min) ||
      (std::abs(fhi.slope) > 0.05 && fhi.r2 < options.fit_r2_min))
    throw std::runtime_error(
        "estimate_intermediate_dimension: non-monotone exponent estimates "
        "(fit r2 below threshold)");

  while (hi - lo > options.s_tolerance) {
    const double mid = 0.5 * (lo + hi);
    (decay(mid).slope > 0.0 ? hi : lo) = mid;
  }
  return {0.5 * (lo + hi), "critical-s bisection"};
}

MassCheckReport mass_distribution_check(const SpiralParams& params,
                                        double theta, double delta,
                                        std::size_t trials, std::uint64_t seed,
                                        const EstimatorOptions& options) {
  require_delta(delta);
  if (!(params.p < 1.0))
    throw std::domain_error("mass_distribution_check: requires p < 1");
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must lie in (0, 1]");
  if (trials < 1) throw std::invalid_argument("trials >= 1");

  const double s = intermediate_dimension(params, theta).value;
  const double t = -std::log(delta);
  const double m_real =
      std::exp(t * (s - 1.0 + theta * (2.0 - s)) / (1.0 + params.q));
  const std::int64_t M = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(m_real)));

  MassCheckReport report;
  report.distribution.delta = delta;
  report.distribution.s = s;
  report.distribution.cutoff = M;
  report.distribution.weights.reserve(M);
  const double mass_scale = std::pow(delta, s - 1.0);
  std::vector<double> lengths(M + 1, 0.0);
  double total = 0.0;
  for (std::int64_t k = 1; k <= M; ++k) {
    lengths[k] = fine_turn_length(params, k);
    const double wk = mass_scale * lengths[k];
    report.distribution.weights.push_back(wk);
    total += wk;
  }
  report.distribution.total_mass = total;
  report.trials = trials;
  report.seed = seed;

  // probe with axis-aligned squares, diameter log-uniform in [delta,
  // delta^theta], centers uniform over the support's bounding box
  const double bx = std::pow(kTwoPi, -params.p);
  const double by = std::pow(kTwoPi, -params.q);
  Rng rng(seed);
  report.worst_ratio = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const double diam =
        std::exp(rng.uniform(std::log(delta), theta * std::log(delta)));
    const double half = diam / (2.0 * std::sqrt(2.0));
    const double cx = rng.uniform(-bx, bx);
    const double cy = rng.uniform(-by, by);
    const Square sq{cx - half, cx + half, cy - half, cy + half};
    double mass = 0.0;
    for (std::int64_t k = 1; k <= M; ++k)
      mass += mass_scale * turn_length_in_square(params, k, sq);
    const double ratio = mass / std::pow(diam, s);
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst = {cx, cy, diam, mass, ratio};
    }
  }
  return report;
}

}  // namespace spiraldim
