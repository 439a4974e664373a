//! A desk-scale laboratory for sum-free sets in finite Abelian groups:
//! Schur-triple hypergraphs, extremal families and their certificates,
//! graph/hypergraph independent-set encoding, character-based Cayley
//! spectra, and exact counting oracles with closed-form bounds.
//!
//! Everything asserted here is either exact integer combinatorics or a
//! float comparison with an explicit tolerance; randomized procedures take
//! explicit seeds and are reproducible for any worker count.

pub mod bitset;
pub mod counting;
pub mod encoding;
pub mod error;
pub mod extremal;
pub mod group;
pub mod hypergraph;
pub mod par;
pub mod spectral;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec, Homomorphism};
pub use hypergraph::{DenseGraph, HypergraphStats, SchurHypergraph, VertexMode};
