//! Exact formulas and certified geometric predicates.

mod exact;
mod formulas;
mod hull;
mod lp;
mod projection;

pub use exact::{dot_sign, to_rational, FLOAT_TOL};
pub use formulas::{
    binomial, binomial_prefix_sum, lower_bound_basic, lower_bound_restricted, lower_bound_simple,
    rational_to_f64, wendel_probability, zonotope_vertex_count_generic, Rational,
};
pub use hull::{
    bentley_cover_check, cone_meets_negative_orthant, cone_meets_negative_orthant_with,
    hull_vertices, hull_vertices_with, membership, origin_in_hull, origin_membership, Arithmetic,
    Membership,
};
pub use projection::{hamming_ball, random_projection_vertex_count, random_subset};

/// A length-`d` vector over `{-1, +1}`, indexing the `2^d` orthants.
pub type SignVector = Vec<i8>;

/// All sign vectors of length `d`, in lexicographic order with `-1 < +1`.
pub fn sign_vectors(d: usize) -> Vec<SignVector> {
    (0..1u64 << d)
        .map(|mask| {
            (0..d)
                .map(|i| if mask >> (d - 1 - i) & 1 == 1 { 1 } else { -1 })
                .collect()
        })
        .collect()
}
