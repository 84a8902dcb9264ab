use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::partition::ConcaveComposition;
use crate::sampler::FrequencyVector;

/// Shape statistics of one composition.
///
/// `tilt` is `ℓ(λ⁺) − ℓ(λ⁻)`. The logistic limit is stated for the opposite
/// difference; pass `-tilt` to [`normalize_tilt`] for that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatSummary {
    pub len_minus: u64,
    pub len_plus: u64,
    /// `ℓ(λ⁻) + ℓ(λ⁺) + 1`, the central part counted as a part.
    pub length: u64,
    pub tilt: i64,
    /// Largest part over both sides; 0 if both are empty.
    pub largest_part: u64,
    /// `length + largest_part`
    pub half_perimeter: u64,
    pub size_minus: u64,
    pub size_plus: u64,
    pub center: u64,
}

impl StatSummary {
    fn from_parts(
        len_minus: u64,
        len_plus: u64,
        largest_part: u64,
        size_minus: u64,
        size_plus: u64,
        center: u64,
    ) -> Self {
        let length = len_minus + len_plus + 1;
        Self {
            len_minus,
            len_plus,
            length,
            tilt: len_plus as i64 - len_minus as i64,
            largest_part,
            half_perimeter: length + largest_part,
            size_minus,
            size_plus,
            center,
        }
    }

    pub fn total(&self) -> u64 {
        self.size_minus + self.center + self.size_plus
    }
}

pub fn summarize(comp: &ConcaveComposition) -> StatSummary {
    let (m, p) = (comp.minus(), comp.plus());
    StatSummary::from_parts(
        m.len() as u64,
        p.len() as u64,
        m.largest_part().max(p.largest_part()),
        m.size(),
        p.size(),
        comp.center(),
    )
}

/// Same as [`summarize`] for the `c = 0` composition encoded by `f`,
/// without expanding the partitions.
pub fn summarize_frequencies(f: &FrequencyVector) -> StatSummary {
    let mut size_minus = 0;
    let mut size_plus = 0;
    for (&k, &(p, m)) in f.entries() {
        size_plus += k * p;
        size_minus += k * m;
    }
    let largest = f.entries().keys().next_back().copied().unwrap_or(0);
    StatSummary::from_parts(
        f.len_minus(),
        f.len_plus(),
        largest,
        size_minus,
        size_plus,
        0,
    )
}

/// `√(3n)/π`, the natural length scale of each side.
pub fn perimeter_scale(n: u64) -> f64 {
    (3.0 * n as f64).sqrt() / PI
}

/// Inverse of `f_n(x) = s x + s ln s` with `s = √(3n)/π`: the centered,
/// scaled length (or largest part) of one side.
pub fn normalize_perimeter(l: u64, n: u64) -> f64 {
    let s = perimeter_scale(n);
    l as f64 / s - s.ln()
}

/// `t / s`. Antisymmetric in `t`; no centering.
pub fn normalize_tilt(t: i64, n: u64) -> f64 {
    t as f64 / perimeter_scale(n)
}

/// `l / s − 2 ln s` for the combined side length `l = ℓ(λ⁻) + ℓ(λ⁺)`.
///
/// Each side concentrates at `s ln s`, so the sum is centered at twice
/// that; the limit is the sum of two independent standard Gumbels.
pub fn normalize_length_sum(l: u64, n: u64) -> f64 {
    let s = perimeter_scale(n);
    l as f64 / s - 2.0 * s.ln()
}
