//! Limit laws, mixture weights and limit-shape geometry.

mod bessel;
mod laws;
mod mixture;
mod pochhammer_check;
mod profile;
mod quadrature;

pub use bessel::{bessel_k0, bessel_k1};
pub use laws::{
    gumbel_cdf, joint_perimeter_cdf, length_sum_cdf, length_sum_cdf_quadrature,
    length_sum_quadrature_with_cutoff, logistic_cdf, side_length_pmf,
};
pub use mixture::{mixture_weights, MixtureWeights};
pub use pochhammer_check::{check_pochhammer_bounds, PochhammerCheck, PochhammerTrial};
pub use profile::{
    build_profile, fit_constants, limit_curve, partition_shape_deviation, points_to_csv,
    shape_deviation, temperley_x, CurvePoint, FittingConstants, Profile, Series, Side, Step,
};
pub use quadrature::adaptive_simpson;
