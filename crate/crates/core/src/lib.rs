//! Reactive Turing machines, the TCP-tau process calculus, and exact
//! (divergence-preserving) branching bisimilarity on finite fragments.
//!
//! The crate is organised by subject:
//!
//! - [`lts`]: actions, lazy transition-system generators, bounded exploration,
//!   parallel composition and the `.lts` text format.
//! - [`rtm`]: reactive Turing machines, tape instances, configuration
//!   semantics, Gödel coding and fixture machines.
//! - [`bisim`]: branching and divergence-preserving branching bisimilarity.
//! - [`calculus`]: process expressions, recursive specifications and their
//!   structural operational semantics.
//! - [`compiler`]: queue, tape and finite-control specifications and the
//!   machine-to-specification compiler.
//! - [`simgen`]: generation of a simulating machine for a finite system.
//! - [`ptm`]: persistent Turing machines and interactive transition systems.

pub mod bisim;
pub mod calculus;
pub mod compiler;
pub mod lts;
pub mod ptm;
pub mod rtm;
pub mod simgen;

pub use lts::{Action, FiniteLts, LtsGenerator, Sym};
