use crate::error::{Error, Result};
use crate::exact::{big_ln, log_qpochhammer, CountTable};

use super::params::tuned_q;

/// `Q_{q_n}(N = n) = p₂(n) q_nⁿ ∏_{k≥1} (1 − q_n^k)²`, evaluated in the log
/// domain from the exact `p₂(n)`.
pub fn local_limit_exact(n: u64, table: &CountTable) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if n as usize >= table.p2.len() {
        return Err(Error::InvalidInput(format!(
            "p2 column does not reach n = {n}"
        )));
    }
    let q = tuned_q(n as f64);
    let euler = log_qpochhammer(q, q, 1e-15)?;
    Ok((big_ln(table.p2(n as usize)) + n as f64 * q.ln() + 2.0 * euler).exp())
}

/// The two competing leading-order constants: `(48n³)^{-1/4}`, which is
/// `1/(√(2π) σ_n)` with `σ_n² = √12 n^{3/2}/π`, and `(96n³)^{-1/4}`.
pub fn local_limit_candidates(n: u64) -> (f64, f64) {
    let n3 = (n as f64).powi(3);
    ((48.0 * n3).powf(-0.25), (96.0 * n3).powf(-0.25))
}
