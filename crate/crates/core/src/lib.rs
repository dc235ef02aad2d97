//! Exact verification and desk-scale experiments around the density-1/4
//! threshold for balanced bi-cliques in complements of string graphs.
//!
//! The crate is organised by the objects it manipulates:
//!
//! * [`graph`], [`graph6`], [`biclique`] and [`enumerate`]: small dense graphs,
//!   their standard text encoding, balanced empty pairs, and isomorph-free
//!   enumeration.
//! * [`subdivision`]: partial subdivisions of `K_t` and recognition of
//!   (induced) weak-subdivisions.
//! * [`admissibility`]: the admissibility predicates with witness search and
//!   independent witness verification.
//! * [`turan`]: weight collapse, partition normalisation, the quotient graph,
//!   the exact simplex minimisation of `phi(Q)`, and the exhaustive verifiers.
//! * [`embedding`]: planted block models and the step-by-step induced
//!   weak-2-subdivision embedding.
//! * [`geometry`]: exact polyline arrangements, planarisation, separators and
//!   the extremal four-clique construction.

pub mod admissibility;
pub mod biclique;
pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod graph6;
pub mod rational;
pub mod rng;
pub mod subdivision;
pub mod turan;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use graph::DenseGraph;
pub use rational::Rational;
