//! Spanning containers in tournament digraphs.
//!
//! A k-container between two vertices is a set of k internally disjoint
//! paths joining them; it is a strong (resp. weak) k*-container when the
//! paths all run the same way (resp. may run either way) and together cover
//! every vertex. This crate constructs such containers, verifies them,
//! computes the derived spanning-connectivity values κ*_s and κ*_w, and
//! cross-checks everything against exhaustive oracles at small orders.
//!
//! Module map:
//! - [`tournament`]: bitset tournament representation, decomposition, the
//!   `tourn-v1` text format
//! - [`generate`]: seeded random and near-regular generators
//! - [`enumerate`]: exhaustive small-order enumeration and isomorphism
//! - [`connectivity`]: Menger flows, vertex connectivity, bypasses
//! - [`hamilton`]: Hamiltonian paths/cycles and the between-pair decision
//!   procedure with its exceptional 6-vertex catalog
//! - [`containers`]: constructive container builders, verifier, and the
//!   exact backtracking oracle
//! - [`spanning`]: κ*_s/κ*_w computation and the theorem-verification
//!   harness

pub mod connectivity;
pub mod containers;
pub mod enumerate;
pub mod generate;
pub mod hamilton;
pub mod spanning;
pub mod tournament;

pub use tournament::{Cycle, Path, Tournament, Vertex};
