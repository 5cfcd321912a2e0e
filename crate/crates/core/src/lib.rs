//! Finite group extensions and their low-degree cohomology, executably.
//!
//! The crate computes H^1 and H^2 of finite groups acting on finite abelian
//! coefficient groups, classifies group extensions and iterated extensions by
//! twisting multiplication tables with 2-cocycles, translates cocycles into
//! extension automorphisms and outer actions, and verifies the six-term exact
//! sequence tying all of these together on concrete instances, emitting
//! replayable certificates.
//!
//! Everything is table-backed: groups are dense multiplication tables with
//! the identity at index 0, and all higher structure (cochains, extensions,
//! connecting maps) is index arithmetic over them.

pub mod abelian;
pub mod catalog;
pub mod cochain;
pub mod error;
pub mod extension;
pub mod group;
pub mod iterext;
pub mod par;
pub mod sixterm;
pub(crate) mod zlin;

pub use error::{Error, Result};
pub use group::{
    automorphism_group, center, inner_automorphisms, outer_automorphisms, quotient,
    relative_automorphisms, AutomorphismGroup, CosetQuotient, Group, Homomorphism, PartialMap,
    RelativeAutomorphisms, Subgroup,
};

/// Size limits for searches and enumerations; all operations that enumerate
/// respect these and fail with `SizeBoundExceeded` rather than hang.
#[derive(Clone, Copy, Debug)]
pub struct Bounds {
    /// cochain-space size at or below which cohomology defaults to the
    /// enumeration engine
    pub enumeration_threshold: u128,
    /// hard cap on any enumeration (classes, cocycles, cosets)
    pub size_bound: u128,
    /// largest group order for automorphism search
    pub aut_search: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            enumeration_threshold: 1_000_000,
            size_bound: 1_000_000,
            aut_search: 64,
        }
    }
}
