#include "spiraldim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spiraldim {

namespace {

constexpr std::uint64_t kNoKey = ~0ull;
constexpr std::int64_t kIndexBound = std::int64_t{1} << 31;

std::uint64_t pack(std::int64_t ix, std::int64_t iy) {
  if (ix <= -kIndexBound || ix >= kIndexBound || iy <= -kIndexBound ||
      iy >= kIndexBound)
    throw std::overflow_error("grid cell index out of packable range");
  const std::uint64_t ux = static_cast<std::uint32_t>(ix + kIndexBound);
  const std::uint64_t uy = static_cast<std::uint32_t>(iy + kIndexBound);
  return (ux << 32) | uy;
}

std::int64_t floor_index(double v, double anchor, double delta) {
  return static_cast<std::int64_t>(std::floor((v - anchor) / delta));
}

}  // namespace

CellRect cell_rect(double x0, double x1, double y0, double y1, double delta,
                   double anchor_x, double anchor_y) {
  CellRect r;
  if (!(x0 <= x1 && y0 <= y1)) return r;
  r.ix0 = floor_index(x0, anchor_x, delta);
  r.ix1 = floor_index(x1, anchor_x, delta);
  r.iy0 = floor_index(y0, anchor_y, delta);
  r.iy1 = floor_index(y1, anchor_y, delta);
  return r;
}

GridCounter::GridCounter(double delta, double anchor_x, double anchor_y)
    : delta_(delta), anchor_x_(anchor_x), anchor_y_(anchor_y),
      last_key_(kNoKey) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
}

std::int64_t GridCounter::cell_index_x(double x) const {
  return floor_index(x, anchor_x_, delta_);
}

std::int64_t GridCounter::cell_index_y(double y) const {
  return floor_index(y, anchor_y_, delta_);
}

void GridCounter::insert(double x, double y) {
  const std::uint64_t key = pack(cell_index_x(x), cell_index_y(y));
  if (key == last_key_) return;
  last_key_ = key;
  finalized_ = false;
  keys_.push_back(key);
  if (keys_.size() >= compact_limit_) compact();
}

void GridCounter::compact() {
  std::sort(keys_.begin(), keys_.end());
  keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
}

void GridCounter::finalize() {
  if (finalized_) return;
  compact();
  finalized_ = true;
}

std::uint64_t GridCounter::unique_count() {
  finalize();
  return keys_.size();
}

std::uint64_t GridCounter::count_in(const CellRect& rect) {
  finalize();
  return count_cells_in(keys_, rect);
}

void GridCounter::drain_into(std::vector<std::uint64_t>& out) {
  finalize();
  out.insert(out.end(), keys_.begin(), keys_.end());
  keys_.clear();
  last_key_ = kNoKey;
  finalized_ = false;
}

std::uint64_t dedupe_cells(std::vector<std::uint64_t>& keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys.size();
}

std::uint64_t count_cells_in(const std::vector<std::uint64_t>& keys,
                             const CellRect& rect) {
  if (rect.empty()) return 0;
  std::uint64_t n = 0;
  for (const std::uint64_t key : keys) {
    const std::int64_t ix = static_cast<std::int64_t>(key >> 32) - kIndexBound;
    const std::int64_t iy =
        static_cast<std::int64_t>(key & 0xffffffffull) - kIndexBound;
    if (rect.contains(ix, iy)) ++n;
  }
  return n;
}

std::uint64_t grid_box_count(const SampledArc& arc, double delta,
                             double anchor_x, double anchor_y) {
  if (arc.points.empty())
    throw std::invalid_argument("grid_box_count: empty arc");
  if (!(arc.max_chord <= delta / 2.0))
    throw std::invalid_argument(
        "grid_box_count: requires arc.max_chord <= delta/2");
  GridCounter counter(delta, anchor_x, anchor_y);
  for (const ArcPoint& pt : arc.points) counter.insert(pt.x, pt.y);
  return counter.unique_count();
}

}  // namespace spiraldim
