//! Strong homotopy theory of finite acyclic categories and unordered Δ-complexes.
//!
//! The crate is split along the two combinatorial worlds and the bridges
//! between them:
//!
//! - [`category`]: acyclic categories, beat objects, strong collapses and cores.
//! - [`delta`]: unordered Δ-complexes, dominated vertices, Δ-maps, contiguity and cores.
//! - [`functors`]: classifying spaces, face posets and barycentric subdivisions.
//! - [`collapse`]: free faces and the expansion of a strong collapse into simple collapses.
//! - [`oracle`]: exhaustive oracles, seeded generators and theorem checkers.
//!
//! Everything here is `no_std` (with `alloc`); file formats and the command
//! line live in the `collapsar` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod category;
pub mod collapse;
pub mod delta;
pub mod digest;
pub mod fixtures;
pub mod functors;
pub mod oracle;

pub use category::{AcyclicCategory, Arrow, BeatWitness, Direction, FunctorData, MorphismId, ObjectId};
pub use delta::{DeltaComplex, DeltaMap, DominationWitness, SimplexId};
pub use digest::Digest;
