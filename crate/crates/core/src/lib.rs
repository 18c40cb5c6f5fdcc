//! Exact constructions around the Möbius–Kantor graph: its `Z_n^4` voltage
//! covers `Λ_n`, their 1-eigenspaces over F2, the lexicographic products
//! `Γ_n = Λ_n[2K_1]`, and the local actions of the arc-transitive groups
//! built from them.

pub mod cli;
pub mod cover;
pub mod eigen;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod localaction;
pub mod mk;
pub mod perm;

pub use error::{Error, Result};
