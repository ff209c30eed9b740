//! Finite groups: element payloads, BFS enumeration, conjugacy and normal
//! structure, quotients, homomorphism search, and the constructor catalog.

pub mod catalog;
pub mod element;
pub mod group;
pub mod hom;
pub mod parse;

pub use element::Element;
pub use group::{ConjClass, FiniteGroup, DEFAULT_ENUM_CAP};
pub use hom::{
    count_epimorphisms, count_homomorphisms, epimorphism_exists, hom_search, Homomorphism,
};
pub use parse::GroupSpec;
