//! Enumeration and spectral analysis of k-path graphs.
//!
//! A k-path graph is a k-tree whose clique tree is a path. Up to isomorphism,
//! k-path graphs of order `n` are in bijection with restricted normalized
//! color sequences of length `n - k - 1` over at most `k + 1` colors, taken up
//! to reversal. This crate provides:
//!
//! * [`seq`]: color sequences, their canonical forms, lexicographic
//!   enumeration, and closed-form counts;
//! * [`graph`]: a small dense graph type (order at most 64) with bitset adjacency;
//! * [`g6`]: a bit-exact graph6 encoder/decoder;
//! * [`kpath`]: construction of a k-path graph from its color sequence, the
//!   inverse derivation, and the named extremal families;
//! * [`spectra`]: Laplacian / signless Laplacian / adjacency / A_alpha
//!   matrices and a dense symmetric (Jacobi) eigensolver;
//! * [`extremal`]: exhaustive extremal-eigenvalue searches over all k-path
//!   graphs of fixed order, and conjecture verification.

#![forbid(unsafe_code)]

pub mod extremal;
pub mod g6;
pub mod graph;
pub mod kpath;
pub mod seq;
pub mod spectra;

pub use extremal::{
    ConjectureReport, Direction, ExtremalRecord, Objective, ObjectiveKind, SearchConfig,
};
pub use g6::{decode, encode};
pub use graph::Graph;
pub use kpath::{generalized_fan, ribbon, weak_generalized_fan, KPathGraph};
pub use seq::{ColorSequence, CountResult};
pub use spectra::{MatrixKind, Spectrum, SymmetricMatrix};
