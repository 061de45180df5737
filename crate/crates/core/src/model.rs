//! Objective matrices, solutions, objective vectors and the dominance order.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A `d x n` matrix of finite linear objective coefficients, stored row-major.
///
/// Row `i` is the objective `v^(i)`; column `j` is the vector `v_j` contributed
/// by variable `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveMatrix {
    d: usize,
    n: usize,
    entries: Vec<f64>,
}

impl ObjectiveMatrix {
    pub fn new(d: usize, n: usize, entries: Vec<f64>) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidInput(format!(
                "objective matrix needs d >= 1 and n >= 1, got {d}x{n}"
            )));
        }
        if entries.len() != d * n {
            return Err(Error::DimensionMismatch {
                context: "objective matrix entries",
                expected: d * n,
                found: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite entry at ({}, {})",
                pos / n,
                pos % n
            )));
        }
        Ok(Self { d, n, entries })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(d * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "objective matrix row",
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(d, n, entries)
    }

    /// Builds the matrix whose columns are the given `d`-vectors.
    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        let n = columns.len();
        let d = columns.first().map_or(0, |c| c.as_ref().len());
        let mut entries = vec![0.0; d * n];
        for (j, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            if col.len() != d {
                return Err(Error::DimensionMismatch {
                    context: "objective matrix column",
                    expected: d,
                    found: col.len(),
                });
            }
            for (i, &v) in col.iter().enumerate() {
                entries[i * n + j] = v;
            }
        }
        Self::new(d, n, entries)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.d).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Applies `f(i, j, value)` to every entry, keeping the shape.
    pub fn map(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(pos, &v)| f(pos / self.n, pos % self.n, v))
            .collect();
        Self::new(self.d, self.n, entries)
    }

    /// Appends `row` below the existing rows.
    pub fn with_row(&self, row: &[f64]) -> Result<Self> {
        if row.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "appended row",
                expected: self.n,
                found: row.len(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(row);
        Self::new(self.d + 1, self.n, entries)
    }
}

/// Value set of the solution coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    /// `{0, 1}`
    ZeroOne,
    /// `{-1, 1}`
    PlusMinusOne,
}

impl Domain {
    /// Numeric value of a coordinate whose "high" flag is `bit`.
    #[inline]
    pub fn value(self, bit: bool) -> f64 {
        match (self, bit) {
            (_, true) => 1.0,
            (Domain::ZeroOne, false) => 0.0,
            (Domain::PlusMinusOne, false) => -1.0,
        }
    }
}

/// A point of `{0,1}^n` or `{-1,1}^n`.
///
/// Coordinates are stored as flags: `true` is `1`, `false` is `0` or `-1`
/// depending on the domain, so every coordinate lies in the domain by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    bits: Vec<bool>,
    domain: Domain,
}

impl Solution {
    pub fn new(bits: Vec<bool>, domain: Domain) -> Self {
        Self { bits, domain }
    }

    pub fn zero_one(bits: Vec<bool>) -> Self {
        Self::new(bits, Domain::ZeroOne)
    }

    pub fn plus_minus_one(bits: Vec<bool>) -> Self {
        Self::new(bits, Domain::PlusMinusOne)
    }

    /// Builds a solution from integer coordinates, rejecting values outside `domain`.
    pub fn from_values(values: &[i64], domain: Domain) -> Result<Self> {
        let low = match domain {
            Domain::ZeroOne => 0,
            Domain::PlusMinusOne => -1,
        };
        let bits = values
            .iter()
            .map(|&v| match v {
                1 => Ok(true),
                v if v == low => Ok(false),
                v => Err(Error::InvalidInput(format!(
                    "coordinate {v} outside the {domain:?} domain"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(bits, domain))
    }

    /// The `n`-bit vector whose coordinate `j` is bit `n-1-j` of `mask`.
    ///
    /// Ascending masks therefore enumerate vectors in lexicographic order.
    pub fn from_mask(mask: u64, n: usize, domain: Domain) -> Self {
        let bits = (0..n).map(|j| (mask >> (n - 1 - j)) & 1 == 1).collect();
        Self::new(bits, domain)
    }

    pub fn all_ones(n: usize, domain: Domain) -> Self {
        Self::new(vec![true; n], domain)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn value(&self, j: usize) -> f64 {
        self.domain.value(self.bits[j])
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.bits.iter().map(|&b| self.domain.value(b))
    }

    /// Number of coordinates equal to `1`.
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn hamming_distance(&self, other: &Solution) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            let c = match (self.domain, b) {
                (Domain::ZeroOne, true) => '1',
                (Domain::ZeroOne, false) => '0',
                (Domain::PlusMinusOne, true) => '+',
                (Domain::PlusMinusOne, false) => '-',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Solution {
    type Err = Error;

    /// Parses `"0110"` as a 0/1 vector and `"+--+"` as a sign vector.
    fn from_str(s: &str) -> Result<Self> {
        let domain = if s.chars().any(|c| c == '+' || c == '-') {
            Domain::PlusMinusOne
        } else {
            Domain::ZeroOne
        };
        let bits = s
            .chars()
            .map(|c| match (domain, c) {
                (Domain::ZeroOne, '1') | (Domain::PlusMinusOne, '+') => Ok(true),
                (Domain::ZeroOne, '0') | (Domain::PlusMinusOne, '-') => Ok(false),
                _ => Err(Error::Parse(format!("bad solution character {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(bits, domain))
    }
}

/// The objective values `Vx` of a solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "objective vector has a non-finite coordinate".into(),
            ));
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<ObjectiveVector> for Vec<f64> {
    fn from(v: ObjectiveVector) -> Self {
        v.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Maximize,
    Minimize,
}

impl Sense {
    pub fn flipped(self) -> Self {
        match self {
            Sense::Maximize => Sense::Minimize,
            Sense::Minimize => Sense::Maximize,
        }
    }
}

/// Per-coordinate optimization sense defining the domination relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DominanceOrder {
    senses: Vec<Sense>,
}

impl DominanceOrder {
    pub fn new(senses: Vec<Sense>) -> Self {
        Self { senses }
    }

    pub fn maximize_all(d: usize) -> Self {
        Self::new(vec![Sense::Maximize; d])
    }

    /// `d` maximized profits followed by one minimized weight.
    pub fn knapsack(d: usize) -> Self {
        let mut senses = vec![Sense::Maximize; d];
        senses.push(Sense::Minimize);
        Self::new(senses)
    }

    pub fn len(&self) -> usize {
        self.senses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.senses.is_empty()
    }

    pub fn senses(&self) -> &[Sense] {
        &self.senses
    }

    pub fn with_flipped(&self, i: usize) -> Self {
        let mut senses = self.senses.clone();
        senses[i] = senses[i].flipped();
        Self::new(senses)
    }

    pub(crate) fn check_len(&self, d: usize) -> Result<()> {
        if self.senses.len() != d {
            return Err(Error::DimensionMismatch {
                context: "dominance order",
                expected: d,
                found: self.senses.len(),
            });
        }
        Ok(())
    }

    /// `true` iff `b` dominates `a`. Lengths are the caller's responsibility.
    #[inline]
    pub fn dominates_unchecked(&self, b: &[f64], a: &[f64]) -> bool {
        debug_assert_eq!(b.len(), a.len());
        debug_assert_eq!(b.len(), self.senses.len());
        let mut strict = false;
        for ((&bi, &ai), sense) in b.iter().zip(a).zip(&self.senses) {
            let (better, worse) = match sense {
                Sense::Maximize => (bi > ai, bi < ai),
                Sense::Minimize => (bi < ai, bi > ai),
            };
            if worse {
                return false;
            }
            strict |= better;
        }
        strict
    }

    /// Maps a point to maximization form by negating minimized coordinates.
    ///
    /// Negation is exact, and `-0.0` is folded to `0.0` so that total ordering
    /// agrees with numeric ordering on the result.
    pub(crate) fn to_maximization(&self, point: &[f64]) -> Vec<f64> {
        point
            .iter()
            .zip(&self.senses)
            .map(|(&v, s)| {
                let v = match s {
                    Sense::Maximize => v,
                    Sense::Minimize => -v,
                };
                if v == 0.0 {
                    0.0
                } else {
                    v
                }
            })
            .collect()
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}
