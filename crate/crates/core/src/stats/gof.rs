use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// Outcome of one goodness-of-fit check; `pass` is `statistic ≤ threshold`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoFReport {
    pub test: String,
    pub statistic: f64,
    #[serde(rename = "n")]
    pub n_samples: u64,
    pub threshold: f64,
    pub pass: bool,
}

impl GoFReport {
    pub fn new(test: impl Into<String>, statistic: f64, n_samples: u64, threshold: f64) -> Self {
        Self {
            test: test.into(),
            statistic,
            n_samples,
            threshold,
            pass: statistic <= threshold,
        }
    }
}

/// Empirical distribution function of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCDF {
    sorted: Vec<f64>,
}

impl EmpiricalCDF {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        if samples.iter().any(|x| x.is_nan()) {
            return Err(Error::InvalidInput("NaN in sample".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { sorted: samples })
    }

    pub fn n_samples(&self) -> usize {
        self.sorted.len()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `≤ x` (right-continuous).
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&s| s <= x) as f64 / self.sorted.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.sorted.iter().sum::<f64>() / self.sorted.len() as f64
    }
}

/// Kolmogorov–Smirnov distance `sup_x |F̂(x) − F(x)|`, taken over both sides
/// of every jump of `F̂`. Ties are handled because the largest index of a
/// tie group gives the upper gap and the smallest gives the lower one.
pub fn ks_distance<F: Fn(f64) -> f64>(e: &EmpiricalCDF, cdf: F, threshold: f64) -> GoFReport {
    let m = e.sorted.len() as f64;
    let d = e.sorted.iter().enumerate().fold(0.0f64, |acc, (i, &x)| {
        let f = cdf(x);
        let upper = (i as f64 + 1.0) / m - f;
        let lower = f - i as f64 / m;
        acc.max(upper).max(lower)
    });
    GoFReport::new("ks", d, e.sorted.len() as u64, threshold)
}

/// Upper `significance` quantile of χ² with `df` degrees of freedom.
pub fn chi_square_threshold(df: u64, significance: f64) -> Result<f64> {
    let dist = ChiSquared::new(df as f64)
        .map_err(|e| Error::InvalidInput(format!("chi-square with {df} dof: {e}")))?;
    Ok(dist.inverse_cdf(1.0 - significance))
}

/// Pearson χ² of `observed` counts against `expected` cell probabilities,
/// thresholded at the `significance` quantile with `cells − 1` dof.
pub fn chi_square(observed: &[u64], expected: &[f64], significance: f64) -> Result<GoFReport> {
    if observed.len() != expected.len() {
        return Err(Error::InvalidInput(
            "observed and expected lengths differ".into(),
        ));
    }
    if observed.len() < 2 {
        return Err(Error::InvalidInput("need at least two cells".into()));
    }
    if !(significance > 0.0 && significance < 1.0) {
        return Err(Error::InvalidInput(format!(
            "significance {significance} not in (0, 1)"
        )));
    }
    let total: f64 = expected.iter().sum();
    if expected.iter().any(|&p| p < 0.0) || (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(
            "expected probabilities must sum to 1".into(),
        ));
    }
    let m: u64 = observed.iter().sum();
    if m == 0 {
        return Err(Error::EmptySample);
    }
    let mf = m as f64;
    let stat = observed
        .iter()
        .zip(expected)
        .map(|(&o, &p)| {
            let e = p * mf;
            let diff = o as f64 - e;
            if e == 0.0 {
                if o == 0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                diff * diff / e
            }
        })
        .sum();
    let threshold = chi_square_threshold(observed.len() as u64 - 1, significance)?;
    Ok(GoFReport::new("chi-square", stat, m, threshold))
}

/// Largest deviation between the empirical joint CDF of `samples` and `cdf`
/// over the grid `xs × ys`.
pub fn grid_deviation<F: Fn(f64, f64) -> f64>(
    samples: &[(f64, f64)],
    xs: &[f64],
    ys: &[f64],
    cdf: F,
    threshold: f64,
) -> Result<GoFReport> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let m = samples.len() as f64;
    let mut worst = 0.0f64;
    for &x in xs {
        for &y in ys {
            let hits = samples.iter().filter(|&&(a, b)| a <= x && b <= y).count();
            worst = worst.max((hits as f64 / m - cdf(x, y)).abs());
        }
    }
    Ok(GoFReport::new(
        "joint-grid",
        worst,
        samples.len() as u64,
        threshold,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_against_uniform() {
        let e = EmpiricalCDF::new(vec![0.5]).unwrap();
        let r = ks_distance(&e, |x: f64| x.clamp(0.0, 1.0), 0.6);
        assert!((r.statistic - 0.5).abs() < 1e-15);
        assert!(r.pass);
    }

    #[test]
    fn right_continuous_eval() {
        let e = EmpiricalCDF::new(vec![2.0, 1.0, 1.0, 3.0]).unwrap();
        assert_eq!(e.eval(0.9), 0.0);
        assert_eq!(e.eval(1.0), 0.5);
        assert_eq!(e.eval(2.5), 0.75);
        assert_eq!(e.eval(f64::INFINITY), 1.0);
    }

    #[test]
    fn empty_sample() {
        assert_eq!(EmpiricalCDF::new(vec![]).unwrap_err(), Error::EmptySample);
    }

    #[test]
    fn ties_in_discrete_samples() {
        // all mass at 0 against a CDF with F(0) = 0.3: gap 0.7 above, 0.3 below
        let e = EmpiricalCDF::new(vec![0.0; 10]).unwrap();
        let r = ks_distance(&e, |x| if x < 0.0 { 0.0 } else { 0.3 }, 1.0);
        assert!((r.statistic - 0.7).abs() < 1e-15);
    }

    #[test]
    fn exact_counts_give_zero_chi_square() {
        let r = chi_square(&[25, 25, 50], &[0.25, 0.25, 0.5], 1e-3).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(r.pass);
        // χ²₂ upper 10⁻³ point
        assert!((r.threshold - 13.815_510_557_964_274).abs() < 1e-6);
    }

    #[test]
    fn chi_square_rejects_bad_input() {
        assert!(chi_square(&[1, 2], &[0.5], 0.01).is_err());
        assert!(chi_square(&[1, 2], &[0.4, 0.4], 0.01).is_err());
        assert!(chi_square(&[0, 0], &[0.5, 0.5], 0.01).is_err());
    }

    #[test]
    fn report_json() {
        let r = GoFReport::new("ks", 0.01, 10, 0.05);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"test":"ks","statistic":0.01,"n":10,"threshold":0.05,"pass":true}"#
        );
    }

    #[test]
    fn grid_deviation_exact() {
        let samples = [(0.0, 0.0), (1.0, 1.0)];
        let r = grid_deviation(&samples, &[0.5], &[0.5], |_, _| 0.5, 0.1).unwrap();
        assert_eq!(r.statistic, 0.0);
    }
}
