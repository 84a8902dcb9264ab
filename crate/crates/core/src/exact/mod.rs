//! Exact generating-function arithmetic and exhaustive enumeration.

mod bignum;
mod counts;
mod enumerate;
mod qseries;
mod series;

pub use bignum::{big_ln, big_ratio, BigCount};
pub use counts::{central_part_zero_probability, CountTable, DEFAULT_N_MAX, TABLE_LIMIT};
pub use enumerate::{
    enumerate_concave, enumerate_concave_bounded, partition_pairs, partitions_of,
    partitions_with_parts_above, DEFAULT_ENUMERATION_BOUND,
};
pub use qseries::{ln_vn_asymptotic, log_qpochhammer, qpochhammer, vn_asymptotic};
pub use series::SeriesPoly;
