#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spiraldim/spiral.hpp"

namespace spiraldim {

struct FbmOptions {
  std::size_t site_limit = 3000;  // covariance factorization is cubic
  double jitter_scale = 1e-10;    // relative diagonal boost on failure
  int jitter_attempts = 8;
};

/// One realization of planar index-alpha fractional Brownian motion at fixed
/// sites: two independent scalar fields, each with covariance
/// (|x|^2a + |y|^2a - |x-y|^2a)/2, anchored to 0 at the origin.
struct FbmField {
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::vector<PlanePoint> sites;
  std::vector<PlanePoint> values;
  double jitter = 0.0;  // diagonal boost the factorization needed, 0 if none
};

/// Factorizes the site covariance once so many seeds can be drawn cheaply.
class FbmSampler {
 public:
  FbmSampler(std::vector<PlanePoint> sites, double alpha,
             const FbmOptions& options = {});

  FbmField draw(std::uint64_t seed) const;

  double jitter() const { return jitter_; }
  const std::vector<PlanePoint>& sites() const { return sites_; }

 private:
  std::vector<PlanePoint> sites_;
  double alpha_;
  double jitter_ = 0.0;
  std::vector<double> chol_;  // row-major lower triangle
};

/// Exact joint Gaussian sample at the sites; deterministic given the seed.
FbmField sample_fbm(std::span<const PlanePoint> sites, double alpha,
                    std::uint64_t seed, const FbmOptions& options = {});

struct ImageDimOptions {
  std::size_t sites = 3000;
  FbmOptions fbm{};
};

/// Per-seed box-count slopes of the motion's image of the spiral, against the
/// Holder-image bound at theta = 1.
struct ImageDimReport {
  double alpha = 0.0;
  double bound = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> slopes;
  double mean_slope = 0.0;
  double implied_profile = 0.0;  // alpha * mean_slope
  int failures = 0;
  std::vector<double> ladder;
  std::int64_t turns = 0;
  std::size_t site_count = 0;
};

/// Sites are arc-length-equidistributed over turns 1..K with K matched to the
/// finest scale of the ladder. alpha = 1 runs the identity passthrough (no
/// randomness) for validation.
ImageDimReport image_box_dimension_experiment(const SpiralParams& params,
                                              double alpha, int seed_count,
                                              std::span<const double> deltas,
                                              std::uint64_t seed_base = 1,
                                              const ImageDimOptions& options =
                                                  {});

}  // namespace spiraldim
