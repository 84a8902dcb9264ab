//! Graphical profiles of compositions and their limit curves.
//!
//! The profile `G_v` of `v = (λ⁻, c, λ⁺)` places the central part on the
//! cell `(−1/2, 1/2]`, the parts of λ⁺ on unit cells to the right in
//! increasing order, and mirrors λ⁻ to the left. Its area is `|v|`. The
//! normalized profile is `G̃_v(x) = G_v(√n x)/√n`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{ConcaveComposition, Partition};
use crate::stats::{normalize_perimeter, perimeter_scale, StatSummary};

/// A constant piece of the unnormalized profile on `(left2/2, right2/2]`.
///
/// Coordinates are doubled so that the half-integer breakpoints are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub left2: i64,
    pub right2: i64,
    pub height: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    Profile,
    LimitPlus,
    LimitMinus,
}

impl Series {
    pub fn as_str(self) -> &'static str {
        match self {
            Series::Profile => "profile",
            Series::LimitPlus => "limit_plus",
            Series::LimitMinus => "limit_minus",
        }
    }
}

/// A point in normalized coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
    pub series: Series,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Composition(ConcaveComposition),
    Partition(Partition),
}

/// Step profile of a composition, or of a single partition drawn as a
/// Young diagram on `x > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    n: u64,
    steps: Vec<Step>,
    shape: Shape,
}

/// Merges runs of equal heights, given cells listed left to right.
fn merge(cells: impl IntoIterator<Item = Step>) -> Vec<Step> {
    let mut out: Vec<Step> = Vec::new();
    for s in cells {
        match out.last_mut() {
            Some(last) if last.height == s.height && last.right2 == s.left2 => {
                last.right2 = s.right2
            }
            _ => out.push(s),
        }
    }
    out
}

pub fn build_profile(comp: &ConcaveComposition) -> Profile {
    let seq = comp.to_sequence();
    let center = comp.minus().len() as i64;
    let cells = seq
        .iter()
        .enumerate()
        .filter(|(_, &h)| h > 0)
        .map(|(i, &h)| {
            let offset = i as i64 - center;
            Step {
                left2: 2 * offset - 1,
                right2: 2 * offset + 1,
                height: h,
            }
        });
    Profile {
        n: comp.total(),
        steps: merge(cells),
        shape: Shape::Composition(comp.clone()),
    }
}

impl Profile {
    /// The Young diagram of `λ`: height `λ_j` on `(j−1, j]`.
    pub fn from_partition(lambda: &Partition) -> Self {
        let cells = lambda.parts().iter().enumerate().map(|(j, &h)| Step {
            left2: 2 * j as i64,
            right2: 2 * j as i64 + 2,
            height: h,
        });
        Profile {
            n: lambda.size(),
            steps: merge(cells),
            shape: Shape::Partition(lambda.clone()),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Twice the area under the profile; equals `2n`.
    pub fn area_doubled(&self) -> u128 {
        self.steps
            .iter()
            .map(|s| (s.right2 - s.left2) as u128 * s.height as u128)
            .sum()
    }

    /// Unnormalized value `G_v(x)`.
    pub fn eval(&self, x: f64) -> u64 {
        let x2 = 2.0 * x;
        self.steps
            .iter()
            .find(|s| (s.left2 as f64) < x2 && x2 <= s.right2 as f64)
            .map_or(0, |s| s.height)
    }

    /// Steps as `(x0, x1, y)` in normalized coordinates.
    pub fn normalized_steps(&self) -> Vec<(f64, f64, f64)> {
        let r = (self.n as f64).sqrt();
        self.steps
            .iter()
            .map(|s| {
                (
                    0.5 * s.left2 as f64 / r,
                    0.5 * s.right2 as f64 / r,
                    s.height as f64 / r,
                )
            })
            .collect()
    }

    /// Normalized x-coordinate of the boundary at normalized height `y`.
    ///
    /// For a composition this is the g-tick `±(ℓ(λ±) − #{parts > y√n} + 1/2)/√n`;
    /// for a partition it is `#{parts > y√n}/√n` on the plus side and 0 on
    /// the minus side.
    pub fn boundary_x(&self, side: Side, y: f64) -> f64 {
        let r = (self.n as f64).sqrt();
        let t = y * r;
        match (&self.shape, side) {
            (Shape::Composition(c), Side::Plus) => {
                let p = c.plus();
                (p.len() - p.parts_above(t)) as f64 / r + 0.5 / r
            }
            (Shape::Composition(c), Side::Minus) => {
                let p = c.minus();
                -((p.len() - p.parts_above(t)) as f64 / r + 0.5 / r)
            }
            (Shape::Partition(l), Side::Plus) => l.parts_above(t) as f64 / r,
            (Shape::Partition(_), Side::Minus) => 0.0,
        }
    }

    /// Corner points of the normalized step function, left to right.
    pub fn points(&self) -> Vec<CurvePoint> {
        self.normalized_steps()
            .into_iter()
            .flat_map(|(x0, x1, y)| {
                [x0, x1].map(|x| CurvePoint {
                    x,
                    y,
                    series: Series::Profile,
                })
            })
            .collect()
    }
}

/// CSV with header `x,y,series`.
pub fn points_to_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("x,y,series\n");
    for p in points {
        let _ = writeln!(out, "{},{},{}", p.x, p.y, p.series.as_str());
    }
    out
}

/// Per-side fitting constants `C_± = e^{−A_±}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittingConstants {
    pub a_minus: f64,
    pub a_plus: f64,
    pub c_minus: f64,
    pub c_plus: f64,
}

impl FittingConstants {
    pub fn from_normalized(a_minus: f64, a_plus: f64) -> Self {
        Self {
            a_minus,
            a_plus,
            c_minus: (-a_minus).exp(),
            c_plus: (-a_plus).exp(),
        }
    }
}

pub fn fit_constants(summary: &StatSummary, n: u64) -> FittingConstants {
    FittingConstants::from_normalized(
        normalize_perimeter(summary.len_minus, n),
        normalize_perimeter(summary.len_plus, n),
    )
}

fn branch_x(n: u64, a: f64, y: f64) -> f64 {
    let k = PI / 3f64.sqrt();
    (perimeter_scale(n).ln() + (-(-k * y).exp()).ln_1p() + a) / k
}

fn check_grid(y_grid: &[f64]) -> Result<()> {
    match y_grid.iter().find(|&&y| !(y > 0.0 && y.is_finite())) {
        Some(y) => Err(Error::Domain(format!(
            "limit curve needs finite y > 0, got {y}"
        ))),
        None => Ok(()),
    }
}

/// Both branches of the fitted limit curve on `y_grid`, minus branch first.
///
/// `x(y) = ±(√3/π)[ln(√3n/π) + ln(1 − e^{−πy/√3}) − ln C_±]`, so that the
/// branch approaches `ℓ(λ±)/√n` as `y → ∞`.
pub fn limit_curve(n: u64, fc: &FittingConstants, y_grid: &[f64]) -> Result<Vec<CurvePoint>> {
    check_grid(y_grid)?;
    let mut out = Vec::with_capacity(2 * y_grid.len());
    for &y in y_grid {
        out.push(CurvePoint {
            x: -branch_x(n, fc.a_minus, y),
            y,
            series: Series::LimitMinus,
        });
    }
    for &y in y_grid {
        out.push(CurvePoint {
            x: branch_x(n, fc.a_plus, y),
            y,
            series: Series::LimitPlus,
        });
    }
    Ok(out)
}

/// Temperley's curve `e^{−πx/√6} + e^{−πy/√6} = 1`, solved for `x`.
pub fn temperley_x(y: f64) -> f64 {
    let k = PI / 6f64.sqrt();
    -(-(-k * y).exp()).ln_1p() / k
}

/// `sup_y` over both sides of `|boundary_x − limit curve x|`, with the
/// constants fitted to the composition itself.
pub fn shape_deviation(comp: &ConcaveComposition, y_grid: &[f64]) -> Result<f64> {
    check_grid(y_grid)?;
    let n = comp.total();
    if n == 0 {
        return Err(Error::InvalidInput(
            "empty composition has no profile".into(),
        ));
    }
    let profile = build_profile(comp);
    let fc = fit_constants(&crate::stats::summarize(comp), n);
    Ok(y_grid
        .iter()
        .map(|&y| {
            let plus = (profile.boundary_x(Side::Plus, y) - branch_x(n, fc.a_plus, y)).abs();
            let minus = (profile.boundary_x(Side::Minus, y) + branch_x(n, fc.a_minus, y)).abs();
            plus.max(minus)
        })
        .fold(0.0, f64::max))
}

/// `sup_y |#{parts > y√n}/√n − temperley_x(y)|` for a single partition.
pub fn partition_shape_deviation(lambda: &Partition, y_grid: &[f64]) -> Result<f64> {
    check_grid(y_grid)?;
    if lambda.is_empty() {
        return Err(Error::InvalidInput("empty partition has no profile".into()));
    }
    let profile = Profile::from_partition(lambda);
    Ok(y_grid
        .iter()
        .map(|&y| (profile.boundary_x(Side::Plus, y) - temperley_x(y)).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_composition() -> ConcaveComposition {
        ConcaveComposition::from_sequence(&[8, 6, 6, 3, 2, 1, 1, 1, 0, 1, 1, 1, 2, 5, 5, 5, 6])
            .unwrap()
    }

    #[test]
    fn area_is_size() {
        let p = build_profile(&figure_composition());
        assert_eq!(p.n(), 54);
        assert_eq!(p.area_doubled(), 108);
    }

    #[test]
    fn single_center_cell() {
        let c = ConcaveComposition::new(Partition::empty(), 1, Partition::empty()).unwrap();
        let p = build_profile(&c);
        assert_eq!(
            p.steps(),
            &[Step {
                left2: -1,
                right2: 1,
                height: 1
            }]
        );
        assert_eq!(p.eval(0.5), 1);
        assert_eq!(p.eval(-0.5), 0);
    }

    #[test]
    fn g_ticks_of_a_small_side() {
        // λ⁺ = (2,1,1): g(0) = 1/2, g(1) = 3 − 1 + 1/2, g(2) = 3 − 0 + 1/2
        let plus = Partition::new(vec![2, 1, 1]).unwrap();
        let c = ConcaveComposition::from_pair(Partition::empty(), plus);
        let p = build_profile(&c);
        assert_eq!(
            p.steps(),
            &[
                Step {
                    left2: 1,
                    right2: 5,
                    height: 1
                },
                Step {
                    left2: 5,
                    right2: 7,
                    height: 2
                },
            ]
        );
        let r = 4f64.sqrt();
        assert!((p.boundary_x(Side::Plus, 1.0 / r) - 2.5 / r).abs() < 1e-15);
        assert!((p.boundary_x(Side::Plus, 0.5 / r) - 0.5 / r).abs() < 1e-15);
    }

    #[test]
    fn limit_curve_endpoint_is_the_perimeter() {
        let n = 1_000_000;
        let fc = FittingConstants::from_normalized(0.7, -0.3);
        let pts = limit_curve(n, &fc, &[60.0]).unwrap();
        let s = perimeter_scale(n);
        let r = (n as f64).sqrt();
        assert!((pts[1].x - s * (s.ln() - 0.3) / r).abs() < 1e-9);
        assert!((pts[0].x + s * (s.ln() + 0.7) / r).abs() < 1e-9);
        assert!(limit_curve(n, &fc, &[0.0]).is_err());
    }

    #[test]
    fn limit_curve_zero_crossing() {
        let n = 10_000u64;
        let fc = FittingConstants::from_normalized(0.0, 0.0);
        let k = PI / 3f64.sqrt();
        let y = -(1.0 - PI / (3.0 * n as f64).sqrt()).ln() / k;
        let pts = limit_curve(n, &fc, &[y]).unwrap();
        assert!(pts[1].x.abs() < 1e-12);
    }

    #[test]
    fn temperley_is_symmetric() {
        for y in [0.3, 1.0, 2.5] {
            let x = temperley_x(y);
            assert!((temperley_x(x) - y).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_header() {
        let p = build_profile(&figure_composition());
        let csv = points_to_csv(&p.points());
        assert!(csv.starts_with("x,y,series\n"));
        assert!(csv.ends_with("profile\n"));
    }
}
