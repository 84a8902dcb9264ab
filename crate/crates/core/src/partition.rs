//! Partitions and concave compositions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition: a non-increasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
    size: u64,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates that `parts` is non-increasing and strictly positive.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition parts must be non-increasing: {parts:?}"
            )));
        }
        let size = parts.iter().sum();
        Ok(Self { parts, size })
    }

    /// Sorts arbitrary positive parts into partition order.
    pub fn from_unsorted(mut parts: Vec<u64>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// Builds the partition with `count` copies of each part `k`.
    /// Zero counts are allowed and ignored; a zero part is rejected.
    pub fn from_frequencies<I>(freqs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut by_part: BTreeMap<u64, u64> = BTreeMap::new();
        for (k, count) in freqs {
            if count == 0 {
                continue;
            }
            if k == 0 {
                return Err(Error::InvalidInput("frequency of part 0".into()));
            }
            *by_part.entry(k).or_default() += count;
        }
        let mut parts = Vec::with_capacity(by_part.values().sum::<u64>() as usize);
        for (&k, &count) in by_part.iter().rev() {
            parts.extend(std::iter::repeat_n(k, count as usize));
        }
        let size = parts.iter().sum();
        Ok(Self { parts, size })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// |λ|
    pub fn size(&self) -> u64 {
        self.size
    }

    /// ℓ(λ)
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest_part(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Smallest part, `None` for the empty partition (read as +∞).
    pub fn smallest_part(&self) -> Option<u64> {
        self.parts.last().copied()
    }

    /// Multiplicities as (part, count) pairs in increasing part order.
    pub fn frequencies(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &p in self.parts.iter().rev() {
            match out.last_mut() {
                Some((k, c)) if *k == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Number of parts strictly greater than `y`.
    pub fn parts_above(&self, y: f64) -> usize {
        // parts are non-increasing, so the predicate is a prefix
        self.parts.partition_point(|&p| p as f64 > y)
    }

    /// Euler conjugate: swaps the roles of length and largest part.
    pub fn conjugate(&self) -> Partition {
        let largest = self.largest_part() as usize;
        let mut parts = Vec::with_capacity(largest);
        for i in 1..=largest as u64 {
            parts.push(self.parts.partition_point(|&p| p >= i) as u64);
        }
        Partition {
            parts,
            size: self.size,
        }
    }

    /// Colexicographic comparison: the reversed part lists compared
    /// lexicographically, so partitions are ordered by their smallest parts
    /// first.
    pub fn cmp_colex(&self, other: &Self) -> Ordering {
        self.parts.iter().rev().cmp(other.parts.iter().rev())
    }
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A concave composition `(λ⁻, c, λ⁺)`.
///
/// Both sides are stored as partitions (non-increasing), so `plus.parts()`
/// lists λ⁺ from the outermost part inward. Every part on either side is
/// strictly greater than `center`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawComposition")]
pub struct ConcaveComposition {
    minus: Partition,
    #[serde(rename = "c")]
    center: u64,
    plus: Partition,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComposition {
    minus: Vec<u64>,
    c: u64,
    plus: Vec<u64>,
}

impl TryFrom<RawComposition> for ConcaveComposition {
    type Error = Error;

    fn try_from(raw: RawComposition) -> Result<Self> {
        ConcaveComposition::new(Partition::new(raw.minus)?, raw.c, Partition::new(raw.plus)?)
    }
}

impl ConcaveComposition {
    pub fn new(minus: Partition, center: u64, plus: Partition) -> Result<Self> {
        for (side, p) in [("minus", &minus), ("plus", &plus)] {
            if let Some(s) = p.smallest_part() {
                if s <= center {
                    return Err(Error::InvalidInput(format!(
                        "smallest {side} part {s} must exceed the central part {center}"
                    )));
                }
            }
        }
        Ok(Self {
            minus,
            center,
            plus,
        })
    }

    /// A composition with central part 0.
    pub fn from_pair(minus: Partition, plus: Partition) -> Self {
        Self {
            minus,
            center: 0,
            plus,
        }
    }

    /// Parses a written composition such as `8,6,6,3,2,1,1,1,0,1,1,1,2,5,5,5,6`.
    ///
    /// The central part is the unique strict minimum; the entries before it
    /// must be non-increasing and the entries after it non-decreasing.
    pub fn from_sequence(seq: &[u64]) -> Result<Self> {
        let Some(&min) = seq.iter().min() else {
            return Err(Error::InvalidInput("empty composition".into()));
        };
        let mut at = seq.iter().enumerate().filter(|(_, &v)| v == min);
        let (idx, _) = at.next().expect("minimum exists");
        if at.next().is_some() {
            return Err(Error::InvalidInput(format!(
                "central part {min} is not a strict minimum"
            )));
        }
        let minus = Partition::new(seq[..idx].to_vec())?;
        let mut right = seq[idx + 1..].to_vec();
        if right.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(
                "parts right of the center must be non-decreasing".into(),
            ));
        }
        right.reverse();
        let plus = Partition::new(right)?;
        Self::new(minus, min, plus)
    }

    pub fn minus(&self) -> &Partition {
        &self.minus
    }

    pub fn plus(&self) -> &Partition {
        &self.plus
    }

    pub fn center(&self) -> u64 {
        self.center
    }

    /// |λ⁻| + c + |λ⁺|
    pub fn total(&self) -> u64 {
        self.minus.size() + self.center + self.plus.size()
    }

    /// The composition written left to right.
    pub fn to_sequence(&self) -> Vec<u64> {
        let mut out = self.minus.parts().to_vec();
        out.push(self.center);
        out.extend(self.plus.parts().iter().rev());
        out
    }

    pub(crate) fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.center
            .cmp(&other.center)
            .then_with(|| self.minus.cmp_colex(&other.minus))
            .then_with(|| self.plus.cmp_colex(&other.plus))
    }
}

impl fmt::Display for ConcaveComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for p in self.minus.parts() {
            write!(f, "{p},")?;
        }
        write!(f, "[{}]", self.center)?;
        for p in self.plus.parts().iter().rev() {
            write!(f, ",{p}")?;
        }
        write!(f, ")")
    }
}
