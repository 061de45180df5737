use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Domain, Solution};

use super::trees;
use super::Budget;

/// A finitely enumerable family of feasible solutions.
#[derive(Debug, Clone, PartialEq)]
pub enum FeasibleSet {
    /// `{0,1}^n`
    FullCube(usize),
    /// `{-1,1}^n`
    SignCube(usize),
    /// 0/1 vectors of length `n` with exactly `k` ones.
    FixedCardinality { n: usize, k: usize },
    /// Incidence vectors of the spanning trees of `K_m`.
    SpanningTreesComplete(usize),
    /// Spanning trees of `K_m` containing `(s,t)` and exactly one of
    /// `(s,u_j)`, `(t,u_j)` for every `j`.
    GadgetTrees(usize),
    ExplicitList(Vec<Solution>),
}

impl FeasibleSet {
    /// An explicit list; all solutions must share length and domain.
    pub fn explicit(solutions: Vec<Solution>) -> Result<Self> {
        let first = solutions
            .first()
            .ok_or(Error::EmptyInput("explicit solution list"))?;
        let (len, domain) = (first.len(), first.domain());
        if len == 0 {
            return Err(Error::InvalidInput("solutions must have length >= 1".into()));
        }
        for s in &solutions {
            if s.len() != len {
                return Err(Error::DimensionMismatch {
                    context: "explicit solution list",
                    expected: len,
                    found: s.len(),
                });
            }
            if s.domain() != domain {
                return Err(Error::InvalidInput(
                    "explicit solution list mixes domains".into(),
                ));
            }
        }
        Ok(Self::ExplicitList(solutions))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::FullCube(n) | Self::SignCube(n) if n == 0 => {
                Err(Error::InvalidInput("cube dimension must be >= 1".into()))
            }
            Self::FixedCardinality { n, k } if n == 0 || k > n => Err(Error::InvalidInput(
                format!("fixed cardinality needs n >= 1 and 0 <= k <= n, got n={n}, k={k}"),
            )),
            Self::SpanningTreesComplete(m) | Self::GadgetTrees(m) if m < 2 => Err(
                Error::InvalidInput(format!("complete graph needs m >= 2 vertices, got {m}")),
            ),
            Self::ExplicitList(ref list) if list.is_empty() => {
                Err(Error::EmptyInput("explicit solution list"))
            }
            _ => Ok(()),
        }
    }

    /// Length of every solution vector.
    pub fn vector_len(&self) -> usize {
        match self {
            Self::FullCube(n) | Self::SignCube(n) => *n,
            Self::FixedCardinality { n, .. } => *n,
            Self::SpanningTreesComplete(m) | Self::GadgetTrees(m) => trees::edge_count(*m),
            Self::ExplicitList(list) => list.first().map_or(0, Solution::len),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Self::SignCube(_) => Domain::PlusMinusOne,
            Self::ExplicitList(list) => list.first().map_or(Domain::ZeroOne, Solution::domain),
            _ => Domain::ZeroOne,
        }
    }

    /// Number of solutions, saturating at `u128::MAX`.
    pub fn cardinality(&self) -> u128 {
        let pow2 = |e: usize| 1u128.checked_shl(e as u32).filter(|_| e < 128).unwrap_or(u128::MAX);
        match *self {
            Self::FullCube(n) | Self::SignCube(n) => pow2(n),
            Self::FixedCardinality { n, k } => binomial_u128(n, k),
            Self::SpanningTreesComplete(m) => {
                if m < 2 {
                    0
                } else {
                    (m as u128).checked_pow((m - 2) as u32).unwrap_or(u128::MAX)
                }
            }
            Self::GadgetTrees(m) => {
                if m < 2 {
                    0
                } else {
                    pow2(m - 2)
                }
            }
            Self::ExplicitList(ref list) => list.len() as u128,
        }
    }

    pub(crate) fn check_budget(&self, budget: &Budget) -> Result<()> {
        self.validate()?;
        let card = self.cardinality();
        if card > budget.max_solutions {
            return Err(Error::Capacity {
                what: format!("feasible set {self}"),
                cardinality: card,
                budget: budget.max_solutions,
            });
        }
        Ok(())
    }

    /// Every feasible solution exactly once, in a fixed order: lexicographic
    /// for cubes and fixed cardinality, lexicographic Prüfer order for
    /// spanning trees, and lexicographic order of the `(s, u_j)` choice
    /// vector for gadget trees.
    pub fn enumerate(&self, budget: &Budget) -> Result<Vec<Solution>> {
        let mut out = Vec::with_capacity(self.cardinality().min(1 << 20) as usize);
        self.visit(budget, |s| out.push(s))?;
        Ok(out)
    }

    /// Streams the enumeration through `f` without materializing it.
    pub fn visit(&self, budget: &Budget, mut f: impl FnMut(Solution)) -> Result<()> {
        self.check_budget(budget)?;
        match *self {
            Self::FullCube(n) => visit_cube(n, Domain::ZeroOne, &mut f),
            Self::SignCube(n) => visit_cube(n, Domain::PlusMinusOne, &mut f),
            Self::FixedCardinality { n, k } => {
                let mut bits = vec![false; n];
                visit_fixed(&mut bits, 0, k, &mut f);
            }
            Self::SpanningTreesComplete(m) => visit_trees(m, &mut f),
            Self::GadgetTrees(m) => visit_gadget_trees(m, &mut f),
            Self::ExplicitList(ref list) => list.iter().cloned().for_each(f),
        }
        Ok(())
    }
}

fn visit_cube(n: usize, domain: Domain, f: &mut impl FnMut(Solution)) {
    // the budget check keeps n well below 64 here
    for mask in 0..(1u64 << n) {
        f(Solution::from_mask(mask, n, domain));
    }
}

fn visit_fixed(bits: &mut Vec<bool>, pos: usize, ones_left: usize, f: &mut impl FnMut(Solution)) {
    let n = bits.len();
    if pos == n {
        if ones_left == 0 {
            f(Solution::zero_one(bits.clone()));
        }
        return;
    }
    if n - pos > ones_left {
        bits[pos] = false;
        visit_fixed(bits, pos + 1, ones_left, f);
    }
    if ones_left > 0 {
        bits[pos] = true;
        visit_fixed(bits, pos + 1, ones_left - 1, f);
        bits[pos] = false;
    }
}

fn visit_trees(m: usize, f: &mut impl FnMut(Solution)) {
    if m == 2 {
        f(Solution::zero_one(vec![true]));
        return;
    }
    let mut seq = vec![0usize; m - 2];
    loop {
        let edges = trees::prufer_decode(m, &seq);
        f(Solution::zero_one(trees::incidence(m, &edges)));
        // odometer increment, last digit fastest
        let mut pos = seq.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            seq[pos] += 1;
            if seq[pos] < m {
                break;
            }
            seq[pos] = 0;
        }
    }
}

fn visit_gadget_trees(m: usize, f: &mut impl FnMut(Solution)) {
    let free = m - 2;
    for mask in 0..(1u64 << free) {
        let choice = Solution::from_mask(mask, free, Domain::ZeroOne);
        f(Solution::zero_one(gadget_tree_bits(m, choice.bits())));
    }
}

/// Incidence vector of the gadget tree selecting `(s, u_j)` where
/// `choice[j]` is set and `(t, u_j)` otherwise.
pub fn gadget_tree_bits(m: usize, choice: &[bool]) -> Vec<bool> {
    debug_assert_eq!(choice.len() + 2, m);
    let mut edges = Vec::with_capacity(m - 1);
    edges.push((0, 1));
    for (j, &via_s) in choice.iter().enumerate() {
        edges.push((if via_s { 0 } else { 1 }, j + 2));
    }
    trees::incidence(m, &edges)
}

/// Exact `C(n, k)` saturating at `u128::MAX`.
fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n - i) is divisible by (i + 1) after the multiplication
        match c.checked_mul((n - i) as u128) {
            Some(v) => c = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    c
}

impl fmt::Display for FeasibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::FullCube(n) => write!(f, "cube:{n}"),
            Self::SignCube(n) => write!(f, "signcube:{n}"),
            Self::FixedCardinality { n, k } => write!(f, "fixedcard:{n}:{k}"),
            Self::SpanningTreesComplete(m) => write!(f, "trees:{m}"),
            Self::GadgetTrees(m) => write!(f, "gadgettrees:{m}"),
            Self::ExplicitList(list) => write!(f, "explicit[{}]", list.len()),
        }
    }
}

impl FromStr for FeasibleSet {
    type Err = Error;

    /// Parses `cube:<n>`, `signcube:<n>`, `fixedcard:<n>:<k>`, `trees:<m>`
    /// or `gadgettrees:<m>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let int = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in feasible set {s:?}")))
        };
        let set = match parts.as_slice() {
            ["cube", n] => Self::FullCube(int(n)?),
            ["signcube", n] => Self::SignCube(int(n)?),
            ["fixedcard", n, k] => Self::FixedCardinality { n: int(n)?, k: int(k)? },
            ["trees", m] => Self::SpanningTreesComplete(int(m)?),
            ["gadgettrees", m] => Self::GadgetTrees(int(m)?),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown feasible set {s:?}; expected cube:<n>, signcube:<n>, \
                     fixedcard:<n>:<k>, trees:<m> or gadgettrees:<m>"
                )))
            }
        };
        set.validate()?;
        Ok(set)
    }
}
