#include "spiraldim/fbm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spiraldim/fit.hpp"
#include "spiraldim/grid.hpp"
#include "spiraldim/rng.hpp"

namespace spiraldim {

namespace {

double scalar_covariance(const PlanePoint& a, const PlanePoint& b,
                         double two_alpha) {
  const double ra = std::hypot(a.x, a.y);
  const double rb = std::hypot(b.x, b.y);
  const double rab = std::hypot(a.x - b.x, a.y - b.y);
  return 0.5 * (std::pow(ra, two_alpha) + std::pow(rb, two_alpha) -
                std::pow(rab, two_alpha));
}

}  // namespace

FbmSampler::FbmSampler(std::vector<PlanePoint> sites, double alpha,
                       const FbmOptions& options)
    : sites_(std::move(sites)), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("fbm: alpha must lie in (0, 1)");
  if (sites_.empty()) throw std::invalid_argument("fbm: no sites");
  if (sites_.size() > options.site_limit)
    throw BudgetError("fbm: site count exceeds the configured limit");

  const std::size_t n = sites_.size();
  // sites at the origin are pinned to 0 exactly (the anchor), not factorized
  std::vector<std::size_t> active;
  active.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (sites_[i].x != 0.0 || sites_[i].y != 0.0) active.push_back(i);

  const std::size_t m = active.size();
  chol_.assign(n * n, 0.0);
  if (m == 0) return;

  Eigen::MatrixXd cov(m, m);
  const double two_alpha = 2.0 * alpha;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double c =
          scalar_covariance(sites_[active[i]], sites_[active[j]], two_alpha);
      cov(i, j) = c;
      cov(j, i) = c;
    }

  double jitter = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  int attempt = 0;
  while (llt.info() != Eigen::Success) {
    if (++attempt > options.jitter_attempts)
      throw std::runtime_error(
          "fbm: covariance factorization lost positive-definiteness");
    jitter = options.jitter_scale * cov.trace() / static_cast<double>(m) *
             std::pow(10.0, attempt - 1);
    Eigen::MatrixXd boosted = cov;
    boosted.diagonal().array() += jitter;
    llt.compute(boosted);
  }
  jitter_ = jitter;

  const Eigen::MatrixXd lower = llt.matrixL();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      chol_[active[i] * n + active[j]] = lower(i, j);
}

FbmField FbmSampler::draw(std::uint64_t seed) const {
  const std::size_t n = sites_.size();
  FbmField field;
  field.alpha = alpha_;
  field.seed = seed;
  field.sites = sites_;
  field.jitter = jitter_;
  field.values.resize(n);

  Rng rng(seed);
  std::vector<double> z(2 * n);
  for (double& v : z) v = rng.gaussian();

  for (std::size_t i = 0; i < n; ++i) {
    double vx = 0.0, vy = 0.0;
    const double* row = &chol_[i * n];
    for (std::size_t j = 0; j <= i; ++j) {
      vx += row[j] * z[j];
      vy += row[j] * z[n + j];
    }
    field.values[i] = {vx, vy};
  }
  return field;
}

FbmField sample_fbm(std::span<const PlanePoint> sites, double alpha,
                    std::uint64_t seed, const FbmOptions& options) {
  FbmSampler sampler(std::vector<PlanePoint>(sites.begin(), sites.end()),
                     alpha, options);
  return sampler.draw(seed);
}

ImageDimReport image_box_dimension_experiment(const SpiralParams& params,
                                              double alpha, int seed_count,
                                              std::span<const double> deltas,
                                              std::uint64_t seed_base,
                                              const ImageDimOptions& options) {
  if (params.p > 1.0)
    throw std::domain_error(
        "image_box_dimension_experiment: requires p <= 1");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1]");
  if (seed_count < 1) throw std::invalid_argument("need >= 1 seed");
  if (deltas.size() < 3) throw std::invalid_argument("need >= 3 scales");

  std::vector<double> ladder(deltas.begin(), deltas.end());
  std::sort(ladder.begin(), ladder.end(), std::greater<>());
  const double delta_min = ladder.back();

  // turn horizon matched to the finest scale, K ~ delta_min^(-1/(1+q))
  const std::int64_t turns = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(
             std::ceil(std::pow(delta_min, -1.0 / (1.0 + params.q)))));
  const std::vector<PlanePoint> sites =
      equidistributed_sites(params, turns, options.sites);

  ImageDimReport report;
  report.alpha = alpha;
  report.ladder = ladder;
  report.turns = turns;
  report.site_count = sites.size();
  {
    // Holder-image bound at theta = 1 (box dimension of the image)
    const double p = params.p, q = params.q;
    if (alpha <= 0.5)
      report.bound = 2.0;
    else if (p >= 1.0)
      report.bound = 1.0 / alpha;
    else
      report.bound = (p + q + 2.0 * (1.0 - p)) /
                     (alpha * (p + q) + (1.0 - p));
  }

  auto cloud_slope = [&](const std::vector<PlanePoint>& cloud) {
    std::vector<double> xs, ys;
    for (const double delta : ladder) {
      GridCounter counter(delta);
      for (const PlanePoint& pt : cloud) counter.insert(pt.x, pt.y);
      xs.push_back(std::log(1.0 / delta));
      ys.push_back(std::log(static_cast<double>(counter.unique_count())));
    }
    return fit_line(xs, ys).slope;
  };

  if (alpha == 1.0) {
    // identity passthrough: the image is the site cloud itself
    report.seeds.push_back(seed_base);
    report.slopes.push_back(cloud_slope(sites));
  } else {
    FbmSampler sampler(sites, alpha, options.fbm);
    for (int i = 0; i < seed_count; ++i) {
      const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(i);
      try {
        const FbmField field = sampler.draw(seed);
        report.seeds.push_back(seed);
        report.slopes.push_back(cloud_slope(field.values));
      } catch (const std::exception&) {
        ++report.failures;
      }
    }
  }
  if (report.slopes.empty())
    throw std::runtime_error(
        "image_box_dimension_experiment: every seed failed");

  double sum = 0.0;
  for (const double s : report.slopes) sum += s;
  report.mean_slope = sum / static_cast<double>(report.slopes.size());
  report.implied_profile = alpha * report.mean_slope;
  return report;
}

}  // namespace spiraldim
