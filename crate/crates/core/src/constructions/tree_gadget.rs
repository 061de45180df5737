//! Random spanning-tree instances whose Pareto-optimal trees all lie in the
//! gadget family.
//!
//! Vertices of `K_m` are `s = 0`, `t = 1` and `u_j = j + 1` for
//! `j = 1..m-2`. The subgraph `G` consists of `(s,t)` and the edges `(s,u_j)`,
//! `(t,u_j)`; profits on `(s,t)` are high, profits on the edges to the `u_j`
//! are moderate and every edge outside `G` is penalized.

use crate::enumeration::{pareto_set, trees, Budget, FeasibleSet, ParetoSet};
use crate::error::{Error, Result};
use crate::model::{DominanceOrder, ObjectiveMatrix, Solution};
use crate::sampling::{DistributionSpec, MatrixDistribution, RandomStream};

/// Largest vertex count accepted by [`verify_gadget_claim`] by default
/// (`8^6 = 262144` spanning trees).
pub const DEFAULT_CLAIM_MAX_M: usize = 8;

/// Role of an edge of `K_m` in the gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRole {
    /// `(s, t)`
    Spine,
    /// `(s, u_j)` or `(t, u_j)`
    Spoke,
    /// Every edge outside the gadget subgraph.
    Outside,
}

impl EdgeRole {
    pub fn of(a: usize, b: usize) -> Self {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        match (a, b) {
            (0, 1) => Self::Spine,
            (0 | 1, _) => Self::Spoke,
            _ => Self::Outside,
        }
    }

    pub fn spec(self) -> DistributionSpec {
        let (lo, hi) = match self {
            Self::Spine => (0.5, 1.0),
            Self::Spoke => (-0.5, 0.5),
            Self::Outside => (-1.0, -0.5),
        };
        DistributionSpec::uniform(lo, hi).expect("fixed intervals are valid")
    }
}

/// The profit distribution of the gadget on `K_m` with `d` objectives.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeGadgetInstance {
    m: usize,
    d: usize,
    distribution: MatrixDistribution,
}

impl TreeGadgetInstance {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// One spec per (objective, edge), edges in [`trees`] order.
    pub fn distribution(&self) -> &MatrixDistribution {
        &self.distribution
    }

    pub fn feasible_set(&self) -> FeasibleSet {
        FeasibleSet::SpanningTreesComplete(self.m)
    }

    pub fn gadget_set(&self) -> FeasibleSet {
        FeasibleSet::GadgetTrees(self.m)
    }

    pub fn bound_target(&self) -> f64 {
        gadget_bound(self.m, self.d)
    }

    pub fn sample(&self, stream: &RandomStream) -> ObjectiveMatrix {
        self.distribution.sample(stream)
    }
}

fn check_gadget(m: usize, d: usize) -> Result<()> {
    if m < 3 || d < 1 {
        return Err(Error::Precondition(format!(
            "tree gadget needs m >= 3 and d >= 1, got m={m}, d={d}"
        )));
    }
    Ok(())
}

/// Builds the gadget distribution. The lower bound target needs `d >= 2`.
pub fn build_tree_gadget(m: usize, d: usize) -> Result<TreeGadgetInstance> {
    check_gadget(m, d)?;
    let e = trees::edge_count(m);
    let row: Vec<DistributionSpec> = (0..e)
        .map(|idx| {
            let (a, b) = trees::edge_endpoints(m, idx);
            EdgeRole::of(a, b).spec()
        })
        .collect();
    let specs = (0..d).flat_map(|_| row.iter().cloned()).collect();
    Ok(TreeGadgetInstance { m, d, distribution: MatrixDistribution::new(d, e, specs)? })
}

/// `((m-3) / (2(d-1)))^(d-1)`; `1` for a single objective.
pub fn gadget_bound(m: usize, d: usize) -> f64 {
    if d <= 1 {
        return 1.0;
    }
    ((m as f64 - 3.0) / (2.0 * (d - 1) as f64)).powi(d as i32 - 1)
}

/// `true` iff `bits` is the incidence vector of a gadget tree.
pub fn is_gadget_tree(m: usize, bits: &[bool]) -> bool {
    if bits.len() != trees::edge_count(m) || !bits[trees::edge_index(m, 0, 1)] {
        return false;
    }
    let choice: Option<Vec<bool>> = (2..m)
        .map(|u| {
            match (bits[trees::edge_index(m, 0, u)], bits[trees::edge_index(m, 1, u)]) {
                (true, false) => Some(true),
                (false, true) => Some(false),
                _ => None,
            }
        })
        .collect();
    choice.is_some_and(|c| crate::enumeration::gadget_tree_bits(m, &c) == bits)
}

/// Outcome of checking that every Pareto-optimal spanning tree is a gadget
/// tree.
#[derive(Debug, Clone, PartialEq)]
pub enum GadgetClaim {
    Holds,
    /// A Pareto-optimal spanning tree outside the gadget family.
    Escaped(Solution),
}

impl GadgetClaim {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Holds)
    }
}

fn check_profits(profits: &ObjectiveMatrix, m: usize, d: usize) -> Result<()> {
    check_gadget(m, d)?;
    if profits.d() != d || profits.n() != trees::edge_count(m) {
        return Err(Error::DimensionMismatch {
            context: "gadget profit matrix (d x edges)",
            expected: d * trees::edge_count(m),
            found: profits.d() * profits.n(),
        });
    }
    Ok(())
}

/// Pareto set over all `m^(m-2)` spanning trees.
pub fn pareto_spanning_trees(profits: &ObjectiveMatrix, m: usize, d: usize) -> Result<ParetoSet> {
    check_profits(profits, m, d)?;
    let budget = Budget { max_solutions: u128::MAX, ..Budget::default() };
    pareto_set(
        profits,
        &FeasibleSet::SpanningTreesComplete(m),
        &DominanceOrder::maximize_all(d),
        &budget,
    )
}

/// Enumerates every spanning tree of `K_m` and checks that each
/// Pareto-optimal one lies in the gadget family. Rejects `m` above
/// [`DEFAULT_CLAIM_MAX_M`].
pub fn verify_gadget_claim(profits: &ObjectiveMatrix, m: usize, d: usize) -> Result<GadgetClaim> {
    verify_gadget_claim_up_to(profits, m, d, DEFAULT_CLAIM_MAX_M)
}

pub fn verify_gadget_claim_up_to(
    profits: &ObjectiveMatrix,
    m: usize,
    d: usize,
    max_m: usize,
) -> Result<GadgetClaim> {
    if m > max_m {
        let trees = (m as u128).saturating_pow(m as u32 - 2);
        return Err(Error::Capacity {
            what: format!("spanning trees of K_{m}"),
            cardinality: trees,
            budget: (max_m as u128).pow(max_m as u32 - 2),
        });
    }
    let set = pareto_spanning_trees(profits, m, d)?;
    Ok(set
        .solutions()
        .iter()
        .find(|s| !is_gadget_tree(m, s.bits()))
        .map_or(GadgetClaim::Holds, |s| GadgetClaim::Escaped(s.clone())))
}

/// Number of Pareto-optimal trees among the `2^(m-2)` gadget trees.
pub fn gadget_pareto_count(profits: &ObjectiveMatrix, m: usize, d: usize) -> Result<u64> {
    check_profits(profits, m, d)?;
    let budget = Budget { max_solutions: u128::MAX, ..Budget::default() };
    Ok(pareto_set(profits, &FeasibleSet::GadgetTrees(m), &DominanceOrder::maximize_all(d), &budget)?
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_grid() {
        let g = build_tree_gadget(3, 2).unwrap();
        assert_eq!(g.distribution().n(), 3);
        assert_eq!(g.gadget_set().cardinality(), 2);
        for spec in g.distribution().specs() {
            assert!(spec.phi() <= 4.0);
        }
        assert_eq!(EdgeRole::of(1, 0), EdgeRole::Spine);
        assert_eq!(EdgeRole::of(1, 4), EdgeRole::Spoke);
        assert_eq!(EdgeRole::of(2, 3), EdgeRole::Outside);
        assert_eq!(build_tree_gadget(6, 2).unwrap().bound_target(), 1.5);
        assert!(build_tree_gadget(2, 2).is_err());
    }

    #[test]
    fn gadget_trees_are_recognized() {
        for m in 3..=7 {
            let mut seen = 0;
            FeasibleSet::SpanningTreesComplete(m)
                .visit(&Budget::default(), |t| {
                    if is_gadget_tree(m, t.bits()) {
                        seen += 1;
                    }
                })
                .unwrap();
            assert_eq!(seen, 1 << (m - 2));
        }
    }

    #[test]
    fn claim_holds_on_samples() {
        for (m, d, samples) in [(4, 2, 100), (5, 3, 50)] {
            let g = build_tree_gadget(m, d).unwrap();
            for s in 0..samples {
                let v = g.sample(&RandomStream::new(s));
                assert!(verify_gadget_claim(&v, m, d).unwrap().holds());
                let c = gadget_pareto_count(&v, m, d).unwrap();
                assert!(c >= 1 && c <= 1 << (m - 2));
            }
        }
    }

    #[test]
    fn counts_agree_with_all_trees() {
        for m in 3..=6 {
            let g = build_tree_gadget(m, 2).unwrap();
            for s in 0..50 {
                let v = g.sample(&RandomStream::new(s));
                assert_eq!(
                    gadget_pareto_count(&v, m, 2).unwrap(),
                    pareto_spanning_trees(&v, m, 2).unwrap().count()
                );
            }
        }
    }

    #[test]
    fn single_objective_has_one_optimum() {
        let g = build_tree_gadget(5, 1).unwrap();
        let v = g.sample(&RandomStream::new(2));
        assert_eq!(gadget_pareto_count(&v, 5, 1).unwrap(), 1);
    }

    #[test]
    fn claim_can_fail_outside_the_distribution() {
        let m = 4;
        let g = build_tree_gadget(m, 2).unwrap();
        let v = g.sample(&RandomStream::new(0));
        let boost = trees::edge_index(m, 2, 3);
        let bad = v.map(|_, j, x| if j == boost { 1.0 } else { x }).unwrap();
        match verify_gadget_claim(&bad, m, 2).unwrap() {
            GadgetClaim::Escaped(t) => assert!(t.bits()[boost]),
            GadgetClaim::Holds => panic!("boosted outside edge should enter some optimum"),
        }
    }

    #[test]
    fn pareto_set_depends_only_on_spoke_differences() {
        let m = 6;
        let g = build_tree_gadget(m, 2).unwrap();
        for s in 0..20 {
            let v = g.sample(&RandomStream::new(s));
            let offsets: Vec<f64> = (0..m - 2).map(|j| 0.1 * j as f64 - 0.2).collect();
            let shifted = v
                .map(|i, e, x| {
                    let (a, b) = trees::edge_endpoints(m, e);
                    if EdgeRole::of(a, b) == EdgeRole::Spoke {
                        x + offsets[b - 2] * (i as f64 + 1.0)
                    } else {
                        x
                    }
                })
                .unwrap();
            let order = DominanceOrder::maximize_all(2);
            let budget = Budget::default();
            let fs = FeasibleSet::GadgetTrees(m);
            let mut a: Vec<String> =
                pareto_set(&v, &fs, &order, &budget).unwrap().solutions().iter().map(|x| x.to_string()).collect();
            let mut b: Vec<String> = pareto_set(&shifted, &fs, &order, &budget)
                .unwrap()
                .solutions()
                .iter()
                .map(|x| x.to_string())
                .collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn oversized_claim_is_a_capacity_error() {
        let g = build_tree_gadget(9, 2).unwrap();
        let v = g.sample(&RandomStream::new(0));
        assert!(matches!(verify_gadget_claim(&v, 9, 2), Err(Error::Capacity { .. })));
    }
}
