//! The Boltzmann measure on pairs of partitions and exact uniform sampling.
//!
//! Under `Q_q` the part multiplicities `X_k⁺`, `X_k⁻` are independent with
//! `P(X = j) = q^{kj}(1 − q^k)`. Conditioning on `N = Σ k(X_k⁺ + X_k⁻) = n`
//! recovers the uniform measure on pairs with total size `n`, which is what
//! [`UniformSampler`] does by rejection.

mod batch;
mod boltzmann;
mod local_limit;
mod params;
mod rejection;

pub use batch::{run_batch, RngSeed};
pub use boltzmann::{
    frequencies_to_partitions, sample_boltzmann, sample_partition, BoltzmannSampler,
    FrequencyVector,
};
pub use local_limit::{local_limit_candidates, local_limit_exact};
pub use params::{
    partition_params, partition_tuned_q, size_moments, tuned_q, BoltzmannParams, SizeMoments,
    DEFAULT_TAIL_EPS,
};
pub use rejection::{
    sample_uniform_pair, RejectionBudget, SampleRecord, UniformPair, UniformSampler,
};
