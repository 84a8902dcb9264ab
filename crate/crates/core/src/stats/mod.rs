//! Composition statistics, their limit-law normalizations, and
//! goodness-of-fit checks against fixed thresholds.

mod gof;
mod summary;

pub use gof::{
    chi_square, chi_square_threshold, grid_deviation, ks_distance, EmpiricalCDF, GoFReport,
};
pub use summary::{
    normalize_length_sum, normalize_perimeter, normalize_tilt, perimeter_scale, summarize,
    summarize_frequencies, StatSummary,
};
