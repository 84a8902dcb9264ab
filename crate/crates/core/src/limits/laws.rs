//! Limit distribution functions for normalized perimeter statistics.

use super::bessel::scaled_k1;
use super::quadrature::adaptive_simpson;
use crate::exact::log_qpochhammer;

/// Standard Gumbel distribution function `exp(−e^{−x})`.
pub fn gumbel_cdf(x: f64) -> f64 {
    (-(-x).exp()).exp()
}

/// Joint limit of the two normalized side lengths: independent Gumbels.
pub fn joint_perimeter_cdf(x: f64, y: f64) -> f64 {
    gumbel_cdf(x) * gumbel_cdf(y)
}

/// Standard logistic distribution function, the limit of the tilt.
pub fn logistic_cdf(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Limit law of the normalized total length `ℓ(λ⁻) + ℓ(λ⁺)`:
/// `2a·K₁(2a)` with `a = e^{−x/2}`.
pub fn length_sum_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let a = (-0.5 * x).exp();
    if a == 0.0 {
        return 1.0;
    }
    let z = 2.0 * a;
    if !z.is_finite() || z > 1400.0 {
        return 0.0;
    }
    scaled_k1(z)
}

/// The same law evaluated independently as
/// `a ∫ e^{−t} exp(−2a cosh t) dt` over the real line.
pub fn length_sum_cdf_quadrature(x: f64) -> f64 {
    length_sum_quadrature_with_cutoff(x, default_cutoff(x))
}

fn default_cutoff(x: f64) -> f64 {
    let a = (-0.5 * x).exp();
    // beyond |t| = ln(40/a) + 5 the integrand is below e^{-40}
    (40.0 / a).ln().max(0.0) + 5.0
}

/// Quadrature over the truncated range `[−t_max, t_max]`.
pub fn length_sum_quadrature_with_cutoff(x: f64, t_max: f64) -> f64 {
    let a = (-0.5 * x).exp();
    let f = |t: f64| a * (-t - 2.0 * a * t.cosh()).exp();
    let panels = (4.0 * t_max).ceil() as usize;
    adaptive_simpson(f, -t_max, t_max, 1e-14, panels).min(1.0)
}

/// `P(ℓ(λ) = a) = q^a (q^{a+1}; q)_∞` under the one-sided Boltzmann
/// measure with parameter `q`.
pub fn side_length_pmf(a: u64, q: f64) -> f64 {
    let log_tail = log_qpochhammer(q.powf(a as f64 + 1.0), q, 1e-15).unwrap_or(f64::NEG_INFINITY);
    (a as f64 * q.ln() + log_tail).exp()
}
