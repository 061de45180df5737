//! Entry distributions and reproducible, path-derived random streams.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ObjectiveMatrix;

/// Distribution of a single matrix entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DistributionSpec {
    UniformInterval { lo: f64, hi: f64 },
    SymmetricUniform { halfwidth: f64 },
    /// Zero-mean normal distribution.
    Gaussian { sigma: f64 },
}

impl DistributionSpec {
    pub fn uniform(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidDistribution(format!(
                "uniform interval needs finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self::UniformInterval { lo, hi })
    }

    pub fn symmetric_uniform(halfwidth: f64) -> Result<Self> {
        if !(halfwidth.is_finite() && halfwidth > 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "symmetric uniform needs a positive finite halfwidth, got {halfwidth}"
            )));
        }
        Ok(Self::SymmetricUniform { halfwidth })
    }

    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "gaussian needs a positive finite sigma, got {sigma}"
            )));
        }
        Ok(Self::Gaussian { sigma })
    }

    /// Supremum of the density.
    pub fn phi(&self) -> f64 {
        match *self {
            Self::UniformInterval { lo, hi } => 1.0 / (hi - lo),
            Self::SymmetricUniform { halfwidth } => 1.0 / (2.0 * halfwidth),
            Self::Gaussian { sigma } => 1.0 / (sigma * (2.0 * std::f64::consts::PI).sqrt()),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match *self {
            Self::UniformInterval { lo, hi } => lo == -hi,
            Self::SymmetricUniform { .. } | Self::Gaussian { .. } => true,
        }
    }

    /// Closed support, `(-inf, inf)` for the Gaussian.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Self::UniformInterval { lo, hi } => (lo, hi),
            Self::SymmetricUniform { halfwidth } => (-halfwidth, halfwidth),
            Self::Gaussian { .. } => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Draws one value. Uniforms map 53 random bits onto `[lo, hi)` by scaling.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::UniformInterval { lo, hi } => lo + (hi - lo) * unit_interval(rng),
            Self::SymmetricUniform { halfwidth } => {
                -halfwidth + 2.0 * halfwidth * unit_interval(rng)
            }
            Self::Gaussian { sigma } => {
                let z: f64 = rng.sample(StandardNormal);
                sigma * z
            }
        }
    }
}

fn unit_interval<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::UniformInterval { lo, hi } => write!(f, "uniform:{lo}:{hi}"),
            Self::SymmetricUniform { halfwidth } => write!(f, "symuniform:{halfwidth}"),
            Self::Gaussian { sigma } => write!(f, "gaussian:{sigma}"),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    /// Parses `uniform:<lo>:<hi>`, `symuniform:<halfwidth>` or `gaussian:<sigma>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number {t:?} in distribution {s:?}")))
        };
        match parts.as_slice() {
            ["uniform", lo, hi] => Self::uniform(num(lo)?, num(hi)?),
            ["symuniform", h] => Self::symmetric_uniform(num(h)?),
            ["gaussian", sigma] => Self::gaussian(num(sigma)?),
            _ => Err(Error::Parse(format!(
                "unknown distribution {s:?}; expected uniform:<lo>:<hi>, symuniform:<h> or gaussian:<sigma>"
            ))),
        }
    }
}

/// Independent per-entry distributions for a `d x n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixDistribution {
    d: usize,
    n: usize,
    specs: Vec<DistributionSpec>,
}

impl MatrixDistribution {
    pub fn iid(d: usize, n: usize, spec: DistributionSpec) -> Result<Self> {
        Self::new(d, n, vec![spec; d * n])
    }

    /// Row-major grid of specs.
    pub fn new(d: usize, n: usize, specs: Vec<DistributionSpec>) -> Result<Self> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidInput(format!(
                "matrix distribution needs d >= 1 and n >= 1, got {d}x{n}"
            )));
        }
        if specs.len() != d * n {
            return Err(Error::DimensionMismatch {
                context: "distribution grid",
                expected: d * n,
                found: specs.len(),
            });
        }
        Ok(Self { d, n, specs })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self, i: usize, j: usize) -> &DistributionSpec {
        &self.specs[i * self.n + j]
    }

    pub fn specs(&self) -> &[DistributionSpec] {
        &self.specs
    }

    /// Largest density bound over the grid.
    pub fn phi(&self) -> f64 {
        self.specs.iter().map(DistributionSpec::phi).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self) -> bool {
        self.specs.iter().all(DistributionSpec::is_symmetric)
    }

    /// Entry `(i, j)` is drawn from the child stream `stream / i / j`.
    pub fn sample(&self, stream: &RandomStream) -> ObjectiveMatrix {
        let mut entries = Vec::with_capacity(self.d * self.n);
        for i in 0..self.d {
            let row = stream.child(i as u64);
            for j in 0..self.n {
                entries.push(sample_entry(self.spec(i, j), &row.child(j as u64)));
            }
        }
        ObjectiveMatrix::new(self.d, self.n, entries)
            .expect("sampled entries are finite and the grid is non-empty")
    }
}

/// One draw from `spec`, a pure function of the stream value.
pub fn sample_entry(spec: &DistributionSpec, stream: &RandomStream) -> f64 {
    spec.sample(&mut stream.rng())
}

pub fn sample_matrix(md: &MatrixDistribution, stream: &RandomStream) -> ObjectiveMatrix {
    md.sample(stream)
}

/// A reproducible random stream identified by a seed and a derivation path.
///
/// Streams are plain values; [`RandomStream::child`] never mutates its
/// parent, and the generator returned by [`RandomStream::rng`] depends only on
/// `(seed, path)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomStream {
    seed: u64,
    path: Vec<u64>,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, path: Vec::new() }
    }

    pub fn with_path(seed: u64, path: Vec<u64>) -> Self {
        Self { seed, path }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn path(&self) -> &[u64] {
        &self.path
    }

    pub fn child(&self, index: u64) -> Self {
        let mut path = Vec::with_capacity(self.path.len() + 1);
        path.extend_from_slice(&self.path);
        path.push(index);
        Self { seed: self.seed, path }
    }

    /// 256-bit generator key. Each path element is folded in with its depth
    /// so that `[a, b]` and `[b, a]` differ.
    fn key(&self) -> [u8; 32] {
        let mut hi = splitmix(self.seed);
        let mut lo = splitmix(self.seed ^ GOLDEN.rotate_left(17));
        for (depth, &p) in self.path.iter().enumerate() {
            let tagged = splitmix(p ^ splitmix(depth as u64 + 1));
            hi = splitmix(hi ^ tagged);
            lo = splitmix(lo.rotate_left(23) ^ tagged ^ hi);
        }
        let len = self.path.len() as u64;
        hi = splitmix(hi ^ len);
        lo = splitmix(lo ^ len.rotate_left(32));
        let mut key = [0u8; 32];
        for (k, word) in [hi, lo, splitmix(hi ^ lo), splitmix(lo.wrapping_sub(hi))]
            .into_iter()
            .enumerate()
        {
            key[k * 8..(k + 1) * 8].copy_from_slice(&word.to_le_bytes());
        }
        key
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::from_seed(self.key())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        assert_eq!(DistributionSpec::uniform(0.0, 1.0).unwrap().phi(), 1.0);
        assert_eq!(DistributionSpec::uniform(0.0, 1.0 / 8.0).unwrap().phi(), 8.0);
        assert_eq!(DistributionSpec::symmetric_uniform(0.5).unwrap().phi(), 1.0);
        let g = DistributionSpec::gaussian(1.0).unwrap().phi();
        assert!((g - 0.398_942_280_401_432_7).abs() < 1e-15);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(DistributionSpec::uniform(2.0, 2.0).is_err());
        assert!(DistributionSpec::uniform(1.0, 0.0).is_err());
        assert!(DistributionSpec::uniform(0.0, f64::INFINITY).is_err());
        assert!(DistributionSpec::symmetric_uniform(0.0).is_err());
        assert!(DistributionSpec::gaussian(-1.0).is_err());
    }

    #[test]
    fn symmetry_flags() {
        assert!(DistributionSpec::uniform(-2.0, 2.0).unwrap().is_symmetric());
        assert!(!DistributionSpec::uniform(-1.0, 2.0).unwrap().is_symmetric());
        assert!(DistributionSpec::symmetric_uniform(3.0).unwrap().is_symmetric());
        assert!(DistributionSpec::gaussian(0.1).unwrap().is_symmetric());
    }

    #[test]
    fn parse_and_display() {
        for s in ["uniform:0:1", "uniform:-0.5:0.5", "symuniform:1", "gaussian:2.5"] {
            let spec: DistributionSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "symuniform:0.5".parse::<DistributionSpec>().unwrap(),
            DistributionSpec::SymmetricUniform { halfwidth: 0.5 }
        );
        assert!("beta:1:2".parse::<DistributionSpec>().is_err());
        assert!("uniform:1".parse::<DistributionSpec>().is_err());
        assert!("uniform:a:b".parse::<DistributionSpec>().is_err());
        assert!("uniform:1:1".parse::<DistributionSpec>().is_err());
    }

    #[test]
    fn sample_entry_support_and_determinism() {
        let spec = DistributionSpec::uniform(0.0, 1.0).unwrap();
        for t in 0..1000 {
            let s = RandomStream::new(7).child(t);
            let x = sample_entry(&spec, &s);
            assert!((0.0..1.0).contains(&x));
            assert_eq!(x.to_bits(), sample_entry(&spec, &s).to_bits());
        }
    }

    #[test]
    fn children_are_distinct_and_order_sensitive() {
        let root = RandomStream::new(1);
        let spec = DistributionSpec::uniform(0.0, 1.0).unwrap();
        let a = sample_entry(&spec, &root.child(1).child(2));
        let b = sample_entry(&spec, &root.child(2).child(1));
        let c = sample_entry(&spec, &RandomStream::with_path(1, vec![1, 2]));
        assert_ne!(a, b);
        assert_eq!(a, c);
        assert_ne!(root.key(), RandomStream::new(2).key());
        assert_ne!(root.key(), root.child(0).key());
    }

    #[test]
    fn symmetric_uniform_mean() {
        let spec = DistributionSpec::symmetric_uniform(1.0).unwrap();
        let mut rng = RandomStream::new(2024).rng();
        let draws = 1_000_000;
        let sum: f64 = (0..draws).map(|_| spec.sample(&mut rng)).sum();
        assert!((sum / draws as f64).abs() < 0.005);
    }

    #[test]
    fn sample_matrix_shape_support_determinism() {
        let grid = vec![
            DistributionSpec::uniform(0.0, 1.0).unwrap(),
            DistributionSpec::uniform(5.0, 6.0).unwrap(),
            DistributionSpec::symmetric_uniform(0.25).unwrap(),
            DistributionSpec::uniform(-1.0, -0.5).unwrap(),
            DistributionSpec::uniform(10.0, 10.5).unwrap(),
            DistributionSpec::symmetric_uniform(2.0).unwrap(),
        ];
        let md = MatrixDistribution::new(2, 3, grid).unwrap();
        let s = RandomStream::new(99);
        let m = sample_matrix(&md, &s);
        assert_eq!((m.d(), m.n()), (2, 3));
        for i in 0..2 {
            for j in 0..3 {
                let (lo, hi) = md.spec(i, j).support();
                assert!(lo <= m.get(i, j) && m.get(i, j) <= hi);
                // entry (i, j) depends only on its own child path
                let direct = sample_entry(md.spec(i, j), &s.child(i as u64).child(j as u64));
                assert_eq!(direct, m.get(i, j));
            }
        }
        assert_eq!(m, sample_matrix(&md, &s));
        assert!(MatrixDistribution::new(2, 3, vec![]).is_err());
    }

    /// Two-sample Kolmogorov-Smirnov distance between X and -X.
    fn ks_reflection(spec: DistributionSpec, seed: u64) -> f64 {
        let mut rng = RandomStream::new(seed).rng();
        let mut xs: Vec<f64> = (0..100_000).map(|_| spec.sample(&mut rng)).collect();
        let mut neg: Vec<f64> = xs.iter().map(|x| -x).collect();
        xs.sort_by(f64::total_cmp);
        neg.sort_by(f64::total_cmp);
        let (mut i, mut j, mut best) = (0usize, 0usize, 0.0f64);
        let len = xs.len() as f64;
        while i < xs.len() && j < neg.len() {
            if xs[i] <= neg[j] {
                i += 1;
            } else {
                j += 1;
            }
            best = best.max((i as f64 / len - j as f64 / len).abs());
        }
        best
    }

    #[test]
    fn symmetric_specs_pass_reflection_ks() {
        for spec in [
            DistributionSpec::symmetric_uniform(1.0).unwrap(),
            DistributionSpec::gaussian(1.0).unwrap(),
            DistributionSpec::uniform(-0.5, 0.5).unwrap(),
        ] {
            assert!(ks_reflection(spec, 5) < 0.01, "{spec}");
        }
        // negative control
        assert!(ks_reflection(DistributionSpec::uniform(0.0, 1.0).unwrap(), 5) > 0.5);
    }
}
