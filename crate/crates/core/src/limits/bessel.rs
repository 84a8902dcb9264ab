//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! Power series below `x = 2`, Steed's continued fraction (Temme's CF2)
//! above.

use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_MAX: f64 = 2.0;

/// `(K₀(x), x·K₁(x) − 1)` for `0 < x ≤ 2` from the ascending series.
fn series_scaled(x: f64) -> (f64, f64) {
    let y = 0.25 * x * x;
    let log_half = (0.5 * x).ln();
    let mut term = 1.0; // y^k / (k!)^2
    let mut harmonic = 0.0; // H_k
    let mut k0 = 0.0;
    let mut i1 = 0.0;
    let mut k1_tail = 0.0;
    for k in 0..200u32 {
        let kf = k as f64;
        if k > 0 {
            term *= y / (kf * kf);
            harmonic += 1.0 / kf;
        }
        let psi_k1 = -EULER_GAMMA + harmonic; // ψ(k+1)
        let psi_k2 = psi_k1 + 1.0 / (kf + 1.0); // ψ(k+2)
        let t1 = term / (kf + 1.0); // y^k / (k! (k+1)!)
        k0 += term * (psi_k1 - log_half);
        i1 += t1;
        k1_tail += t1 * (psi_k1 + psi_k2);
        if term < 1e-18 * k0.abs().max(1e-300) && t1 < 1e-18 * i1 {
            break;
        }
    }
    let i1 = 0.5 * x * i1;
    (k0, x * (log_half * i1 - 0.25 * x * k1_tail))
}

fn series(x: f64) -> (f64, f64) {
    let (k0, delta) = series_scaled(x);
    (k0, 1.0 / x + delta / x)
}

/// `(K₀(x), K₁(x))` for `x > 2` by Steed's algorithm.
fn continued_fraction(x: f64) -> (f64, f64) {
    let a1 = 0.25; // 1/4 − μ² with μ = 0
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000u32 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    let h = a1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

fn pair(x: f64) -> (f64, f64) {
    assert!(x > 0.0, "K_ν(x) needs x > 0, got {x}");
    if x <= SERIES_MAX {
        series(x)
    } else {
        continued_fraction(x)
    }
}

pub fn bessel_k0(x: f64) -> f64 {
    pair(x).0
}

pub fn bessel_k1(x: f64) -> f64 {
    pair(x).1
}

/// `x·K₁(x)`, written as `1 + δ` below `x = 2` so that it rounds
/// monotonically as it approaches 1.
pub(crate) fn scaled_k1(x: f64) -> f64 {
    assert!(x > 0.0, "K₁(x) needs x > 0, got {x}");
    if x <= SERIES_MAX {
        1.0 + series_scaled(x).1
    } else {
        x * continued_fraction(x).1
    }
}
