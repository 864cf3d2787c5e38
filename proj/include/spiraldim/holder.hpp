#pragma once

#include <optional>
#include <string>

#include "spiraldim/spiral.hpp"

namespace spiraldim {

/// Source and target exponents of a deformation from the (p, q) spiral onto
/// the (r, s) spiral.
struct DeformationPair {
  SpiralParams source;  // (p, q)
  SpiralParams target;  // (r, s)
};

/// Admissible Holder exponents aggregated over the applicable bounds.
/// Values are clamped to 1 (an exponent above 1 carries no information);
/// nullopt marks a bound whose hypotheses fail for this pair.
struct HolderBoundReport {
  std::optional<double> box_bound;
  std::optional<double> profile_bound;
  bool box_clamped = false;
  bool profile_clamped = false;
  double best = 1.0;
  std::string binding;  // "box", "profile" or "none"
};

/// Box-dimension bound: (2+q-p)(1+s) / ((2+s-r)(1+q)) for p <= 1, else
/// (1+s)/(2+s-r). Requires r <= 1; clamped to 1.
double box_dim_bound(const DeformationPair& pair);

/// Dimension-profile bound (p+q+r+s-pr+qs) / ((2+s-r)(p+q)); requires
/// p <= 1 and r <= 1; clamped to 1. Always exceeds 1/2.
double profile_bound(const DeformationPair& pair);

/// (p+q)/(2p) for maps from the hyperbolic spiral S_p onto S_q, p > q,
/// p <= 1. Coincides with profile_bound((p,p) -> (q,q)).
double hyperbolic_bound(double p, double q);

/// Evaluates every applicable bound and reports the minimum and which
/// argument binds; binding = "none" when no bound is below 1.
HolderBoundReport best_bound(const DeformationPair& pair);

}  // namespace spiraldim
