#include "spiraldim/holder.hpp"

#include <algorithm>
#include <stdexcept>

namespace spiraldim {

namespace {

double box_bound_raw(const DeformationPair& pair) {
  const double p = pair.source.p, q = pair.source.q;
  const double r = pair.target.p, s = pair.target.q;
  if (p <= 1.0)
    return (2.0 + q - p) * (1.0 + s) / ((2.0 + s - r) * (1.0 + q));
  return (1.0 + s) / (2.0 + s - r);
}

double profile_bound_raw(const DeformationPair& pair) {
  const double p = pair.source.p, q = pair.source.q;
  const double r = pair.target.p, s = pair.target.q;
  return (p + q + r + s - p * r + q * s) / ((2.0 + s - r) * (p + q));
}

}  // namespace

double box_dim_bound(const DeformationPair& pair) {
  if (pair.target.p > 1.0)
    throw std::domain_error("box_dim_bound: requires r <= 1");
  return std::min(1.0, box_bound_raw(pair));
}

double profile_bound(const DeformationPair& pair) {
  if (pair.source.p > 1.0)
    throw std::domain_error("profile_bound: requires p <= 1");
  if (pair.target.p > 1.0)
    throw std::domain_error("profile_bound: requires r <= 1");
  return std::min(1.0, profile_bound_raw(pair));
}

double hyperbolic_bound(double p, double q) {
  if (!(q > 0.0 && p > q))
    throw std::domain_error("hyperbolic_bound: requires p > q > 0");
  if (p > 1.0) throw std::domain_error("hyperbolic_bound: requires p <= 1");
  return (p + q) / (2.0 * p);
}

HolderBoundReport best_bound(const DeformationPair& pair) {
  HolderBoundReport report;
  if (pair.target.p <= 1.0) {
    const double raw = box_bound_raw(pair);
    report.box_clamped = raw > 1.0;
    report.box_bound = std::min(1.0, raw);
  }
  if (pair.source.p <= 1.0 && pair.target.p <= 1.0) {
    const double raw = profile_bound_raw(pair);
    report.profile_clamped = raw > 1.0;
    report.profile_bound = std::min(1.0, raw);
  }

  report.best = 1.0;
  report.binding = "none";
  if (report.profile_bound && !report.profile_clamped &&
      *report.profile_bound <= report.best) {
    report.best = *report.profile_bound;
    report.binding = "profile";
  }
  if (report.box_bound && !report.box_clamped &&
      *report.box_bound < report.best) {
    report.best = *report.box_bound;
    report.binding = "box";
  }
  return report;
}

}  // namespace spiraldim
