//! Exact computations with representations of finite groups over finite
//! fields: composition factors, counts of (absolutely) irreducible modules,
//! first cohomology, chief series and crown data, and the power series built
//! from the counts, all in exact field / big-integer arithmetic.

pub mod cohom;
pub mod crowns;
pub mod error;
pub mod fqlinalg;
pub mod gmod;
pub mod groups;
pub mod growth;
pub mod repcount;
pub mod verify;

pub use error::{Error, Result};
