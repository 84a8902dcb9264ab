use crate::error::{Error, Result};
use crate::partition::{ConcaveComposition, Partition};

/// Largest `n` accepted by [`enumerate_concave`].
pub const DEFAULT_ENUMERATION_BOUND: u64 = 25;

/// All partitions of `n` whose parts all exceed `floor`, in reverse
/// lexicographic order (largest first part first).
pub fn partitions_with_parts_above(n: u64, floor: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fill(n, n, floor, &mut stack, &mut out);
    out
}

fn fill(remaining: u64, max_part: u64, floor: u64, stack: &mut Vec<u64>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::new(stack.clone()).expect("generated in order"));
        return;
    }
    for part in (floor + 1..=max_part.min(remaining)).rev() {
        stack.push(part);
        fill(remaining - part, part, floor, stack, out);
        stack.pop();
    }
}

pub fn partitions_of(n: u64) -> Vec<Partition> {
    partitions_with_parts_above(n, 0)
}

/// Every ordered pair `(λ⁻, λ⁺)` with `|λ⁻| + |λ⁺| = n`; there are `p₂(n)`.
pub fn partition_pairs(n: u64) -> Vec<(Partition, Partition)> {
    let by_size: Vec<Vec<Partition>> = (0..=n).map(partitions_of).collect();
    let mut out = Vec::new();
    for a in 0..=n as usize {
        for minus in &by_size[a] {
            for plus in &by_size[n as usize - a] {
                out.push((minus.clone(), plus.clone()));
            }
        }
    }
    out
}

/// Every concave composition of `n`, each once.
///
/// Ordered by increasing central part, then colex on `λ⁻`, then colex on
/// `λ⁺` (see [`Partition::cmp_colex`]). `n = 0` yields nothing.
pub fn enumerate_concave(n: u64) -> Result<Vec<ConcaveComposition>> {
    enumerate_concave_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_concave_bounded(n: u64, bound: u64) -> Result<Vec<ConcaveComposition>> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    for c in 0..=n {
        let rest = n - c;
        let sides: Vec<Vec<Partition>> = (0..=rest)
            .map(|m| partitions_with_parts_above(m, c))
            .collect();
        for a in 0..=rest {
            for minus in &sides[a as usize] {
                for plus in &sides[(rest - a) as usize] {
                    out.push(
                        ConcaveComposition::new(minus.clone(), c, plus.clone())
                            .expect("sides built above the center"),
                    );
                }
            }
        }
    }
    out.sort_by(|a, b| a.cmp_canonical(b));
    Ok(out)
}
