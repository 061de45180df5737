//! Pareto-optima laboratory for random multiobjective 0-1 linear optimization.
//!
//! The crate is organized bottom-up:
//!
//! * [`model`] and [`dominance`]: objective matrices, solutions, the
//!   domination order and the reference Pareto filter.
//! * [`sampling`]: entry distributions and reproducible random streams.
//! * [`enumeration`]: feasible-set families and exact Pareto-set enumerators.
//! * [`geometry`]: exact combinatorial formulas and certified geometric
//!   predicates (origin in hull, hull vertices, cone tests).
//! * [`constructions`]: the spanning-tree gadget, the unit-weight knapsack
//!   family and the cloning-step parameter schedule.
//! * [`harness`]: Monte Carlo experiments, statistics and export.

pub mod constructions;
pub mod dominance;
pub mod enumeration;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod model;
pub mod sampling;

pub use dominance::{dominates, evaluate, pareto_filter};
pub use error::{Error, Result};
pub use model::{Domain, DominanceOrder, ObjectiveMatrix, ObjectiveVector, Sense, Solution};
pub use sampling::{DistributionSpec, MatrixDistribution, RandomStream};
