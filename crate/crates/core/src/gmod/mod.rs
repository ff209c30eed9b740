//! Finite-dimensional modules over group algebras F[G] and their
//! decomposition into composition factors.
//!
//! Row-vector convention throughout: vectors are rows, the group acts on the
//! right (`v -> v * A_g`), and `A_g * A_h = A_{gh}`. Submodules are row
//! spaces closed under every generator action.

mod meataxe;
mod module;

pub use meataxe::{
    chop, chop_with_cap, clifford_restriction, descriptor, is_irreducible, iso_test, ChopFactor,
    CliffordRestriction, CompositionSeries, IrreducibleDescriptor,
};
pub use module::{intertwiners, GModule, DEFAULT_CHOP_CAP};
