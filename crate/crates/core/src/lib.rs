//! Finite permutation-group engine for solvable radicals.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`], [`chain`], [`group`], [`rng`]: permutations, stabilizer chains
//!   (deterministic Schreier–Sims) and random elements.
//! * [`field`], [`matrix`], [`spec`]: finite fields, classical matrix groups
//!   and the group-spec grammar realized as permutation groups.
//! * [`structure`]: derived series, solvability certificates, normal closures,
//!   centralizers and conjugacy classes.
//! * [`radical`]: k-radical elements, radical degree, solvable radical by
//!   three independent routes, and suitability under conjugate generation.
//! * [`rootsys`]: exact root systems and Weyl-word evaluation.

pub mod chain;
pub mod error;
pub mod field;
pub mod group;
pub mod matrix;
pub mod perm;
pub mod radical;
pub mod rng;
pub mod rootsys;
pub mod spec;
pub mod structure;

pub use chain::StabilizerChain;
pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
pub use rng::RngState;
