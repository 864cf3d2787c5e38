#pragma once

#include <cstdint>
#include <vector>

#include "spiraldim/spiral.hpp"

namespace spiraldim {

/// Inclusive index range of grid cells [i*delta, (i+1)*delta) x [j*delta,
/// (j+1)*delta) meeting a closed axis-aligned rectangle. empty() when the
/// rectangle is degenerate.
struct CellRect {
  std::int64_t ix0 = 0, ix1 = -1;
  std::int64_t iy0 = 0, iy1 = -1;

  bool empty() const { return ix1 < ix0 || iy1 < iy0; }
  std::uint64_t cell_count() const {
    if (empty()) return 0;
    return static_cast<std::uint64_t>(ix1 - ix0 + 1) *
           static_cast<std::uint64_t>(iy1 - iy0 + 1);
  }
  bool contains(std::int64_t ix, std::int64_t iy) const {
    return ix >= ix0 && ix <= ix1 && iy >= iy0 && iy <= iy1;
  }
};

CellRect cell_rect(double x0, double x1, double y0, double y1, double delta,
                   double anchor_x = 0.0, double anchor_y = 0.0);

/// Streaming counter of distinct grid cells of side delta (grid anchored at
/// (anchor_x, anchor_y)) hit by inserted points. Keys are kept in a flat
/// vector and deduplicated by sort; adjacent repeats are dropped on insert so
/// dense polylines stay close to one key per visited cell.
class GridCounter {
 public:
  explicit GridCounter(double delta, double anchor_x = 0.0,
                       double anchor_y = 0.0);

  void insert(double x, double y);

  /// Sorts and deduplicates; afterwards unique_count()/count_in() are valid.
  /// Idempotent until the next insert.
  void finalize();

  std::uint64_t unique_count();
  std::uint64_t count_in(const CellRect& rect);

  /// Finalizes, appends the unique keys to `out` and resets the counter.
  /// Lets callers accumulate many small counts (e.g. per turn) and
  /// deduplicate once at the end.
  void drain_into(std::vector<std::uint64_t>& out);

  std::int64_t cell_index_x(double x) const;
  std::int64_t cell_index_y(double y) const;

 private:
  void compact();

  double delta_;
  double anchor_x_, anchor_y_;
  std::vector<std::uint64_t> keys_;
  std::uint64_t last_key_;
  bool finalized_ = false;
  std::size_t compact_limit_ = 120'000'000;
};

/// Sorts + deduplicates a raw cell-key vector in place; returns the count.
std::uint64_t dedupe_cells(std::vector<std::uint64_t>& keys);

/// Number of deduplicated keys falling inside the cell rectangle.
std::uint64_t count_cells_in(const std::vector<std::uint64_t>& keys,
                             const CellRect& rect);

/// Distinct grid cells hit by the points of a sampled arc. Requires
/// arc.max_chord <= delta/2 so the polyline cannot skip a cell between
/// consecutive samples.
std::uint64_t grid_box_count(const SampledArc& arc, double delta,
                             double anchor_x = 0.0, double anchor_y = 0.0);

}  // namespace spiraldim
