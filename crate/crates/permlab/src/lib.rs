//! permlab: a permutation-group laboratory.
//!
//! The kernel is a deterministic Schreier–Sims stabilizer chain over
//! permutations of `{0..n-1}` ([`perm`], [`group`]). On top of it sit orbit
//! and block-system machinery ([`actions`]), suborbits of point stabilizers
//! with orbital pairing ([`orbitals`]), composition series and related
//! order arithmetic ([`structure`]), a family of executable bound checks
//! with machine-readable certificates ([`theorems`]), and a deterministic
//! corpus of transitive groups to run them on ([`corpus`]).
//!
//! Composition is left-to-right everywhere: `compose(p, q)` maps `i` to
//! `q[p[i]]`, matching the exponent notation `x^g`. All logarithms in bound
//! checks are base 2.

pub mod actions;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod fileformat;
pub mod group;
pub mod orbitals;
pub mod perm;
pub mod primes;
pub mod report;
pub mod structure;
pub mod theorems;

pub use error::{Error, Result};
pub use group::{PermGroup, StabilizerChain};
pub use perm::Perm;
