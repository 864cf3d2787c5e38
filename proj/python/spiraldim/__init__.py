"""Dimension laboratory for elliptical polynomial spirals.

Closed-form intermediate/box/Assouad dimensions and Holder deformation
bounds, plus the constructive estimators (grid box counting, localized
covers, two-scale covers, mass distributions, fractional-Brownian images).
"""

from ._core import (  # noqa: F401
    BudgetError,
    DimensionValue,
    SampledArc,
    SpiralParams,
    TwoScaleCover,
    WindowIndices,
    __version__,
    assouad_dimension,
    assouad_spectrum,
    best_bound,
    box_cover_count,
    box_dim_bound,
    box_dimension,
    ellipse_family_points,
    equidistributed_sites,
    estimate_assouad_spectrum,
    estimate_box_dimension,
    estimate_intermediate_dimension,
    geometric_ladder,
    grid_box_count,
    holder_image_box_bound,
    hyperbolic_bound,
    image_box_dimension_experiment,
    intermediate_dimension,
    local_cover_count,
    mass_distribution_check,
    phase_transitions,
    point_at,
    profile_bound,
    profile_upper_bound,
    sample_fbm,
    sample_spiral,
    turn_gap_lower_bound,
    turn_length_bounds,
    turn_length_sum,
    two_scale_cover,
    window_indices,
)
