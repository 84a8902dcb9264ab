use crate::error::{Error, Result};

const MAX_FACTORS: u64 = 200_000_000;

/// `ln (z; q)_∞ = Σ_j ln(1 − z q^j)`.
///
/// Returns `-inf` when a factor vanishes exactly. The product is cut at the
/// first index `J` with `|z| q^J ≤ 1/2` and `2 |z| q^{J+1} / (1 − q) < tol / 2`,
/// which bounds the log of the omitted tail by `tol / 2` and hence the
/// relative error of the product by `tol`.
pub fn log_qpochhammer(z: f64, q: f64, tol: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("q = {q} must lie in (0, 1)")));
    }
    if tol.is_nan() || tol <= 0.0 || !z.is_finite() {
        return Err(Error::Domain(format!(
            "need finite z and tol > 0, got z = {z}, tol = {tol}"
        )));
    }
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    let mut w = z;
    let mut j = 0u64;
    loop {
        let factor = 1.0 - w;
        if factor == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        if factor < 0.0 {
            return Err(Error::NonConvergence(format!(
                "factor 1 - z q^{j} = {factor} is negative"
            )));
        }
        // Kahan summation keeps long products near q → 1 accurate
        let term = (-w).ln_1p() - comp;
        let next = acc + term;
        comp = (next - acc) - term;
        acc = next;

        let wa = w.abs();
        if wa <= 0.5 && 2.0 * wa * q / (1.0 - q) < 0.5 * tol {
            return Ok(acc);
        }
        j += 1;
        if j > MAX_FACTORS {
            return Err(Error::NonConvergence(format!(
                "no convergence after {MAX_FACTORS} factors (q = {q})"
            )));
        }
        w *= q;
    }
}

/// `(z; q)_∞ = ∏_{j≥0} (1 − z q^j)` with relative error below `tol`.
pub fn qpochhammer(z: f64, q: f64, tol: f64) -> Result<f64> {
    log_qpochhammer(z, q, tol).map(f64::exp)
}

/// Natural log of the leading-order `V(n) ≈ √6 (12n)^{-5/4} e^{π√(12n)/3}`.
pub fn ln_vn_asymptotic(n: u64) -> f64 {
    let n = n as f64;
    0.5 * 6f64.ln() - 1.25 * (12.0 * n).ln() + std::f64::consts::PI * (12.0 * n).sqrt() / 3.0
}

/// Leading-order asymptotic for `V(n)`, which is also the leading order of
/// `p₂(n)`. Overflows to `inf` beyond n ≈ 4·10⁴; use [`ln_vn_asymptotic`].
pub fn vn_asymptotic(n: u64) -> f64 {
    ln_vn_asymptotic(n).exp()
}
