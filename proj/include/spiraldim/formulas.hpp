#pragma once

#include <string>
#include <utility>

#include "spiraldim/spiral.hpp"

namespace spiraldim {

/// A dimension (or bound) value together with the formula branch that
/// produced it.
struct DimensionValue {
  double value;
  std::string branch;
};

/// theta-intermediate dimension of the spiral, theta in [0, 1].
/// (p+q+2*theta*(1-p)) / (p+q+theta*(1-p)) for p < 1, otherwise 1.
DimensionValue intermediate_dimension(const SpiralParams& params, double theta);

/// Box-counting dimension, the theta = 1 endpoint: (2+q-p)/(1+q) for p < 1,
/// otherwise 1.
DimensionValue box_dimension(const SpiralParams& params);

/// Assouad spectrum at theta in [0, 1). Three branches with breakpoints
/// p/(1+q) and q/(1+q); boundary values take the right-hand branch.
DimensionValue assouad_spectrum(const SpiralParams& params, double theta);

/// Assouad dimension; equals 2 for every admissible (p, q).
DimensionValue assouad_dimension(const SpiralParams& params);

/// Upper bound on the upper theta-intermediate dimension of the image of the
/// spiral under an alpha-Holder map into the plane.
DimensionValue holder_image_box_bound(const SpiralParams& params, double alpha,
                                      double theta);

/// Upper bound on the upper 2*alpha dimension profile of the spiral;
/// requires p <= 1. alpha = 1 is accepted as the continuity extension.
DimensionValue profile_upper_bound(const SpiralParams& params, double alpha,
                                   double theta);

/// The two non-differentiability points (p/(1+q), q/(1+q)) of the spectrum.
std::pair<double, double> phase_transitions(const SpiralParams& params);

}  // namespace spiraldim
