//! Vertex counts of random low-dimensional projections of 0/1 point sets.

use rand::seq::index;

use crate::dominance::evaluate_unchecked;
use crate::enumeration::{Budget, FeasibleSet};
use crate::error::{Error, Result};
use crate::model::{Domain, Solution};
use crate::sampling::{DistributionSpec, MatrixDistribution, RandomStream};

use super::hull::hull_vertices;

/// Projects the points of `fs` with a `d x n` standard Gaussian matrix
/// drawn from `stream` and counts the vertices of the image.
///
/// The row space of such a matrix is a uniformly random `d`-dimensional
/// subspace.
pub fn random_projection_vertex_count(
    fs: &FeasibleSet,
    d: usize,
    stream: &RandomStream,
    budget: &Budget,
) -> Result<usize> {
    fs.validate()?;
    let n = fs.vector_len();
    if d == 0 || d > n {
        return Err(Error::InvalidInput(format!(
            "projection dimension must lie in [1, {n}], got {d}"
        )));
    }
    let solutions = fs.enumerate(budget)?;
    let gauss = DistributionSpec::gaussian(1.0)?;
    let g = MatrixDistribution::iid(d, n, gauss)?.sample(stream);
    let points: Vec<Vec<f64>> = solutions.iter().map(|x| evaluate_unchecked(&g, x)).collect();
    Ok(hull_vertices(&points)?.len())
}

fn check_subset_size(n: usize, k: usize) -> Result<()> {
    if n == 0 || n > 26 {
        return Err(Error::InvalidInput(format!("subset families need 1 <= n <= 26, got {n}")));
    }
    if k == 0 || k > 1 << n {
        return Err(Error::InvalidInput(format!("size must lie in [1, 2^{n}], got {k}")));
    }
    Ok(())
}

/// The `k` points of `{0,1}^n` closest to `center` in Hamming distance;
/// ties are broken by lexicographic order of the bit vectors.
pub fn hamming_ball(n: usize, center: &Solution, k: usize) -> Result<FeasibleSet> {
    check_subset_size(n, k)?;
    if center.len() != n || center.domain() != Domain::ZeroOne {
        return Err(Error::InvalidInput(format!(
            "center must be a 0/1 vector of length {n}"
        )));
    }
    let mut all: Vec<(usize, u64)> = (0..1u64 << n)
        .map(|mask| {
            let s = Solution::from_mask(mask, n, Domain::ZeroOne);
            (s.hamming_distance(center), mask)
        })
        .collect();
    all.sort_unstable();
    FeasibleSet::explicit(
        all.into_iter()
            .take(k)
            .map(|(_, mask)| Solution::from_mask(mask, n, Domain::ZeroOne))
            .collect(),
    )
}

/// `k` distinct points of `{0,1}^n` chosen uniformly from `stream`, in
/// lexicographic order.
pub fn random_subset(n: usize, k: usize, stream: &RandomStream) -> Result<FeasibleSet> {
    check_subset_size(n, k)?;
    let mut masks: Vec<usize> = index::sample(&mut stream.rng(), 1 << n, k).into_vec();
    masks.sort_unstable();
    FeasibleSet::explicit(
        masks
            .into_iter()
            .map(|m| Solution::from_mask(m as u64, n, Domain::ZeroOne))
            .collect(),
    )
}
