#include "spiraldim/formulas.hpp"

#include <stdexcept>

namespace spiraldim {

namespace {

void require_theta_closed(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("theta must lie in [0, 1]");
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1]");
}

}  // namespace

DimensionValue intermediate_dimension(const SpiralParams& params,
                                      double theta) {
  require_theta_closed(theta);
  if (params.p >= 1.0) return {1.0, "p>=1"};
  const double num = params.p + params.q + 2.0 * theta * (1.0 - params.p);
  const double den = params.p + params.q + theta * (1.0 - params.p);
  return {num / den, "p<1"};
}

DimensionValue box_dimension(const SpiralParams& params) {
  if (params.p >= 1.0) return {1.0, "p>=1"};
  return {(2.0 + params.q - params.p) / (1.0 + params.q), "p<1"};
}

DimensionValue assouad_spectrum(const SpiralParams& params, double theta) {
  if (!(theta >= 0.0 && theta < 1.0))
    throw std::invalid_argument("theta must lie in [0, 1)");
  const double p = params.p, q = params.q;
  const auto [theta1, theta2] = phase_transitions(params);
  if (theta >= theta2) return {2.0, "q/(1+q)<=theta"};
  if (theta >= theta1)
    return {(2.0 + q - theta * (1.0 + q)) / ((1.0 + q) * (1.0 - theta)),
            "p/(1+q)<=theta<q/(1+q)"};
  if (p < 1.0)
    return {(2.0 + q - p) / ((1.0 + q) * (1.0 - theta)), "theta<p/(1+q),p<1"};
  return {(p - theta * (p - 1.0)) / (p * (1.0 - theta)),
          "theta<p/(1+q),p>=1"};
}

DimensionValue assouad_dimension(const SpiralParams&) {
  return {2.0, "all p,q"};
}

DimensionValue holder_image_box_bound(const SpiralParams& params, double alpha,
                                      double theta) {
  require_theta_closed(theta);
  require_alpha(alpha);
  if (alpha <= 0.5) return {2.0, "alpha<=1/2"};
  if (params.p >= 1.0) return {1.0 / alpha, "p>=1"};
  const double p = params.p, q = params.q;
  const double num = p + q + 2.0 * theta * (1.0 - p);
  const double den = alpha * (p + q) + theta * (1.0 - p);
  return {num / den, "p<1"};
}

DimensionValue profile_upper_bound(const SpiralParams& params, double alpha,
                                   double theta) {
  require_theta_closed(theta);
  require_alpha(alpha);
  if (params.p > 1.0)
    throw std::domain_error("profile_upper_bound: requires p <= 1");
  if (alpha <= 0.5) return {2.0 * alpha, "alpha<=1/2"};
  const double p = params.p, q = params.q;
  const double num = alpha * (p + q + 2.0 * theta * (1.0 - p));
  const double den = alpha * (p + q) + theta * (1.0 - p);
  return {num / den, "alpha>1/2"};
}

std::pair<double, double> phase_transitions(const SpiralParams& params) {
  return {params.p / (1.0 + params.q), params.q / (1.0 + params.q)};
}

}  // namespace spiraldim
