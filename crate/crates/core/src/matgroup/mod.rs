//! Finite matrix groups: closure with relation harvesting, projective
//! quotients, classes, abelianization, linear characters and
//! homomorphism search.

mod abelian;
mod cayley;
mod closure;
mod homs;
mod perm;
mod proj;

pub use abelian::{abelianization, characters_of, linear_characters, Abelianization, LinearCharacter};
pub use cayley::{closure, CayleyGraph, Relation};
pub use closure::{MatGroup, DEFAULT_CLOSURE_CAP};
pub use homs::{enumerate_transitive_homs, find_isomorphism, HomSource, PermHom, Symmetric, Target};
pub use perm::{Perm, MAX_POINTS};
pub use proj::ProjGroup;

/// Default bound on `|G|` for imprimitivity and isomorphism searches.
pub const DEFAULT_CLASS_CAP: usize = 2000;

/// The alternating group on five points as a permutation Cayley graph.
pub fn alternating_five() -> CayleyGraph {
    let gens = [
        Perm::from_cycles(5, &[&[0, 1, 2]]).expect("cycle"),
        Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).expect("cycle"),
    ];
    closure(Perm::identity(5), &gens, |a, b| a.compose(b), 60)
        .expect("order 60")
        .1
}
