//! Characters of the defining representation, symmetric powers and
//! semi-invariants.

pub mod character;
pub mod poly;
pub mod semi;

pub use character::{inner_product, inner_product_values, linear_character_values, natural_character, Character};
pub use poly::{monomial_count, monomials, sym_cube_2x2, sym_power_matrix, variable_names, Polynomial};
pub use semi::{min_semi_invariant, min_semi_invariant_degree, semi_invariants, sparsest_witness, SemiInvariantSpace};
