//! Explicit instance families: the spanning-tree gadget, unit-weight
//! knapsacks and the cloning-step parameter schedule.

mod knapsack;
mod schedule;
mod tree_gadget;

pub use knapsack::{
    build_unit_weight_knapsack, restricted_pareto_solutions, verify_knapsack_embedding,
    KnapsackInstance, DEFAULT_EMBEDDING_MAX_N,
};
pub use schedule::{br_bound_value, br_parameters, solve_phi_hat, BRParameters};
pub use tree_gadget::{
    build_tree_gadget, gadget_bound, gadget_pareto_count, is_gadget_tree, pareto_spanning_trees,
    verify_gadget_claim, verify_gadget_claim_up_to, EdgeRole, GadgetClaim, TreeGadgetInstance,
    DEFAULT_CLAIM_MAX_M,
};
