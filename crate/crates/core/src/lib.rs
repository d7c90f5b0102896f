//! Exact-arithmetic workbench for key varieties and their duals.

pub mod chow;
pub mod claims;
pub mod groebner;
pub mod lindual;
pub mod multigraded;
pub mod par;
pub mod piclattice;
pub mod polycore;
pub mod rng;
pub mod varieties;
