//! Slow, obviously-correct reference implementations used to test `wedit`.
//!
//! Everything here favors directness over speed: full dynamic-programming
//! tables, exhaustive enumeration with explicit budgets, and a dense
//! product-construction composition. Production code must never depend on
//! this crate; it is a dev-dependency of `wedit` only.

pub mod dp;
pub mod gen;
pub mod lang;
pub mod reference;

pub use dp::{dp_edit_distance, exhaustive_alignment_min, DpAlignment};
pub use lang::{enumerate_language, enumerate_transducer};
pub use reference::{bellman_ford, compose_epsilon_full, full_lattice_reference};
