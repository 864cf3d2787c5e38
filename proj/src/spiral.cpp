#include "spiraldim/spiral.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

namespace spiraldim {

namespace {

void require_turn_index(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("turn index must be >= 1");
}

std::int64_t steps_on_turn(const SpiralParams& params, std::int64_t k,
                           double max_chord) {
  const double dt = turn_parameter_step(params, k, max_chord);
  const double n = std::ceil(kTwoPi / dt);
  return n < 1.0 ? 1 : static_cast<std::int64_t>(n);
}

void append_format(std::string& out, double v) {
  std::array<char, 32> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

}  // namespace

PlanePoint point_at(const SpiralParams& params, double t) {
  if (!(t >= kTwoPi))
    throw std::domain_error("point_at: parameter below 2*pi");
  return {std::pow(t, -params.p) * std::cos(t),
          std::pow(t, -params.q) * std::sin(t)};
}

std::pair<double, double> turn_length_bounds(const SpiralParams& params,
                                             std::int64_t k) {
  require_turn_index(k);
  const double lo = std::pow(kTwoPi * static_cast<double>(k), -params.p);
  return {lo, 8.0 * lo};
}

double turn_length_sum(const SpiralParams& params, std::int64_t M,
                       std::int64_t N) {
  require_turn_index(M);
  if (M >= N) throw std::domain_error("turn_length_sum: requires M < N");
  const double p = params.p;
  const double m = static_cast<double>(M), n = static_cast<double>(N);
  if (p == 1.0) return std::log(n) - std::log(m);
  if (p < 1.0) return (std::pow(n, 1.0 - p) - std::pow(m, 1.0 - p)) / (1.0 - p);
  return (std::pow(m, 1.0 - p) - std::pow(n, 1.0 - p)) / (p - 1.0);
}

double turn_gap_lower_bound(const SpiralParams& params, std::int64_t k,
                            std::int64_t M) {
  if (k < 2) throw std::domain_error("turn_gap_lower_bound: requires k >= 2");
  if (k > M) throw std::invalid_argument("turn_gap_lower_bound: k <= M");
  return params.q * std::pow(static_cast<double>(M), -(1.0 + params.q));
}

double turn_gap_lower_bound(const SpiralParams& params, std::int64_t k) {
  if (k < 2) throw std::domain_error("turn_gap_lower_bound: requires k >= 2");
  return params.q * std::pow(static_cast<double>(k), -(1.0 + params.q));
}

double turn_parameter_step(const SpiralParams& params, std::int64_t k,
                           double max_chord) {
  require_turn_index(k);
  if (!(max_chord > 0.0))
    throw std::invalid_argument("max_chord must be positive");
  return max_chord * std::pow(kTwoPi * static_cast<double>(k), params.p) / 4.0;
}

SampledArc sample_spiral(const SpiralParams& params, std::int64_t k_min,
                         std::int64_t k_max, double max_chord,
                         const SampleOptions& options) {
  require_turn_index(k_min);
  if (k_min > k_max)
    throw std::invalid_argument("sample_spiral: k_min <= k_max required");
  if (!(max_chord > 0.0))
    throw std::invalid_argument("max_chord must be positive");

  std::uint64_t total = 1;  // closing point at 2*pi*(k_max+1)
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    total += static_cast<std::uint64_t>(steps_on_turn(params, k, max_chord));
    if (total > options.point_budget)
      throw BudgetError("sample_spiral: point budget exceeded");
  }

  SampledArc arc;
  arc.max_chord = max_chord;
  arc.points.reserve(total);
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    const std::int64_t n = steps_on_turn(params, k, max_chord);
    const double t0 = kTwoPi * static_cast<double>(k);
    const double dt = kTwoPi / static_cast<double>(n);
    for (std::int64_t i = 0; i < n; ++i) {
      const double t = t0 + dt * static_cast<double>(i);
      const PlanePoint pt = point_at(params, t);
      arc.points.push_back({t, pt.x, pt.y});
    }
  }
  const double t_end = kTwoPi * static_cast<double>(k_max + 1);
  const PlanePoint pt = point_at(params, t_end);
  arc.points.push_back({t_end, pt.x, pt.y});
  return arc;
}

SampledArc ellipse_family_points(const SpiralParams& params,
                                 std::int64_t n_max, double max_chord,
                                 const SampleOptions& options) {
  require_turn_index(n_max);
  if (!(max_chord > 0.0))
    throw std::invalid_argument("max_chord must be positive");

  std::uint64_t total = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    total += static_cast<std::uint64_t>(steps_on_turn(params, n, max_chord)) + 1;
    if (total > options.point_budget)
      throw BudgetError("ellipse_family_points: point budget exceeded");
  }

  SampledArc arc;
  arc.max_chord = max_chord;
  arc.segment_starts.clear();
  arc.points.reserve(total);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    arc.segment_starts.push_back(arc.points.size());
    const double a = std::pow(kTwoPi * static_cast<double>(n), -params.p);
    const double b = std::pow(kTwoPi * static_cast<double>(n), -params.q);
    const std::int64_t steps = steps_on_turn(params, n, max_chord);
    const double dphi = kTwoPi / static_cast<double>(steps);
    const double t0 = kTwoPi * static_cast<double>(n);
    for (std::int64_t i = 0; i <= steps; ++i) {
      const double phi = dphi * static_cast<double>(i);
      arc.points.push_back({t0 + phi, a * std::cos(phi), b * std::sin(phi)});
    }
  }
  return arc;
}

std::vector<PlanePoint> equidistributed_sites(const SpiralParams& params,
                                              std::int64_t k_max,
                                              std::size_t count) {
  require_turn_index(k_max);
  if (count < 2)
    throw std::invalid_argument("equidistributed_sites: count >= 2");

  const int steps = 2048;  // fine walk; length error ~ (2pi/steps)^2
  const double t0 = kTwoPi;
  const double t1 = kTwoPi * static_cast<double>(k_max + 1);
  const std::int64_t n = static_cast<std::int64_t>(k_max) * steps;
  const double dt = (t1 - t0) / static_cast<double>(n);

  double total = 0.0;
  {
    PlanePoint prev = point_at(params, t0);
    for (std::int64_t i = 1; i <= n; ++i) {
      const PlanePoint cur = point_at(params, t0 + dt * i);
      total += std::hypot(cur.x - prev.x, cur.y - prev.y);
      prev = cur;
    }
  }

  const double spacing = total / static_cast<double>(count);
  std::vector<PlanePoint> sites;
  sites.reserve(count);
  double acc = spacing;  // first site one spacing in, so sites stay interior
  PlanePoint prev = point_at(params, t0);
  for (std::int64_t i = 1; i <= n && sites.size() < count; ++i) {
    const PlanePoint cur = point_at(params, t0 + dt * i);
    acc += std::hypot(cur.x - prev.x, cur.y - prev.y);
    if (acc >= spacing) {
      sites.push_back(cur);
      acc -= spacing;
    }
    prev = cur;
  }
  while (sites.size() < count) sites.push_back(point_at(params, t1));
  return sites;
}

double polyline_length(const SampledArc& arc) {
  double len = 0.0;
  std::size_t seg = 0;
  for (std::size_t i = 1; i < arc.points.size(); ++i) {
    while (seg + 1 < arc.segment_starts.size() &&
           arc.segment_starts[seg + 1] <= i)
      ++seg;
    if (seg < arc.segment_starts.size() && arc.segment_starts[seg] == i)
      continue;  // first point of a new component
    const double dx = arc.points[i].x - arc.points[i - 1].x;
    const double dy = arc.points[i].y - arc.points[i - 1].y;
    len += std::hypot(dx, dy);
  }
  return len;
}

void write_csv(const SampledArc& arc, std::ostream& out) {
  std::string line = "t,x,y\n";
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  for (const ArcPoint& pt : arc.points) {
    line.clear();
    append_format(line, pt.t);
    line.push_back(',');
    append_format(line, pt.x);
    line.push_back(',');
    append_format(line, pt.y);
    line.push_back('\n');
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
}

namespace {

void put_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big)
    bits = __builtin_bswap64(bits);
  char buf[8];
  std::memcpy(buf, &bits, 8);
  out.write(buf, 8);
}

bool get_le(std::istream& in, double& v) {
  char buf[8];
  if (!in.read(buf, 8)) return false;
  std::uint64_t bits;
  std::memcpy(&bits, buf, 8);
  if constexpr (std::endian::native == std::endian::big)
    bits = __builtin_bswap64(bits);
  v = std::bit_cast<double>(bits);
  return true;
}

}  // namespace

void write_binary(const SampledArc& arc, std::ostream& out) {
  for (const ArcPoint& pt : arc.points) {
    put_le(out, pt.t);
    put_le(out, pt.x);
    put_le(out, pt.y);
  }
}

SampledArc read_binary(std::istream& in) {
  SampledArc arc;
  ArcPoint pt;
  while (get_le(in, pt.t)) {
    if (!get_le(in, pt.x) || !get_le(in, pt.y))
      throw std::runtime_error("read_binary: truncated triple");
    arc.points.push_back(pt);
  }
  double chord = 0.0;
  for (std::size_t i = 1; i < arc.points.size(); ++i) {
    const double dx = arc.points[i].x - arc.points[i - 1].x;
    const double dy = arc.points[i].y - arc.points[i - 1].y;
    chord = std::max(chord, std::hypot(dx, dy));
  }
  arc.max_chord = chord;
  return arc;
}

}  // namespace spiraldim
