//! Exact combinatorics of weight systems on branched surfaces.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the companion `branchweight` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod branched;
pub mod dividing;
pub mod fibered;
pub mod fixtures;
pub mod hilbert;
pub mod lutz;
pub mod triangulation;
mod union_find;
pub mod weight;

pub use branched::{BranchedSurface, CarriedSurface, Classification};
pub use hilbert::{ConeSystem, MinimalGenerators};
pub use weight::WeightVector;
