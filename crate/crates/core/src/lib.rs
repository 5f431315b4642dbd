//! Induced poset saturation in the Boolean lattice `2^[n]`.
//!
//! Families of subsets are bitmask lists kept in canonical order (size, then
//! value). On top of that sit induced-copy detection for small patterns,
//! saturation checks with certificates, machine checks of the structural
//! facts known for N-saturated families, and an exact branch-and-bound
//! search for the saturation number at small `n`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod error;
mod perm;

pub mod detect;
pub mod family;
pub mod pattern;
pub mod saturation;
pub mod search;
pub mod verify;

pub use detect::{contains_induced, copies_through, induced_embeddings, Embedding};
pub use error::{DetectError, FamilyError, PatternError, SaturationError, VerifyError};
pub use family::{
    complement_family, components, extremes, hasse_edges, subset_leq, ComponentDecomposition, GroundSet, SetFamily,
    SubsetMask,
};
pub use pattern::{pattern_automorphisms, validate_pattern, PosetPattern, StandardPattern};
