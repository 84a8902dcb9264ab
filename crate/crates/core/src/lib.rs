//! Exact counting, Boltzmann sampling and limit laws for concave compositions.
//!
//! A concave composition of `n` is a triple `(λ⁻, c, λ⁺)` where `λ⁻` and
//! `λ⁺` are integer partitions whose parts all exceed the central part `c`
//! and `|λ⁻| + c + |λ⁺| = n`. Written out it reads
//! `λ⁻₁ ≥ … ≥ λ⁻_L > c < λ⁺₁ ≤ … ≤ λ⁺_R`.
//!
//! The crate is split into four layers:
//!
//! - [`exact`]: arbitrary-precision counts `p(n)`, `p₂(n)`, `V(n)`, exhaustive
//!   enumeration, q-Pochhammer evaluation and leading-order asymptotics.
//! - [`sampler`]: the Boltzmann product measure on pairs of partitions tuned
//!   to size `n`, its moments, and exact uniform sampling by rejection.
//! - [`stats`]: per-composition statistics (length, tilt, half-perimeter),
//!   their normalizations, and goodness-of-fit machinery.
//! - [`limits`]: the limiting laws (Gumbel, logistic, two-Gumbel sum),
//!   mixture weights, graphical profiles and the limit-shape curves.

pub mod error;
pub mod exact;
pub mod limits;
pub mod partition;
pub mod sampler;
pub mod stats;

pub use error::{Error, Result};
pub use partition::{ConcaveComposition, Partition};
