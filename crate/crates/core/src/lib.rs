//! Packings of (mixed hyper)arborescences, hyperbranchings and rooted
//! hyperforests, and the corresponding arc/edge augmentation problems.
//!
//! The crate is organized around three layers:
//!
//! * ground structures and set algebra ([`hypercore`], [`matroids`],
//!   [`gpoly`]),
//! * certificate-producing min-max checkers and witness validation
//!   ([`conditions`], [`verify`]),
//! * constructive solvers and independent brute-force oracles
//!   ([`augment`], [`oracles`]).
//!
//! Everything operates on explicit small instances: vertex sets are 64-bit
//! masks, set functions are full tables, and all quantifiers are enumerated.
//! Enumeration caps are configurable through [`caps::Caps`] and the
//! `ARBOPACK_CAP` environment variable.

pub mod augment;
pub mod caps;
pub mod conditions;
pub mod error;
pub mod gen;
pub mod gpoly;
pub mod hypercore;
pub mod matroids;
pub mod oracles;
pub mod problem;
pub mod verify;

pub use caps::Caps;
pub use error::Error;
pub use hypercore::{Dyperedge, MixedHypergraph, Subpartition, UncrossResult, VertSet};
pub use matroids::{MatroidOracle, RootMultiset};
pub use verify::{MemberWitness, PackingWitness, Requirements};
