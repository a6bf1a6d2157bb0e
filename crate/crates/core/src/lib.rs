//! Deterministic range avoidance for local circuits and low-degree maps
//! over GF(2).
//!
//! Given a map `C: {0,1}^n -> {0,1}^m` with `m > n`, some `y` in `{0,1}^m`
//! lies outside the image of `C`. This crate finds such points without
//! randomness:
//!
//! * [`solvers`] holds the brute-force oracle, the dimension-reduction
//!   step for outputs that read two inputs, the two-local solver, the
//!   branching union-of-subspaces solver for any locality, the single-subspace
//!   solver for three-local circuits, and the degree-2 pipeline.
//! * [`encoding`] turns degree-`d` polynomial maps into circuits of locality
//!   `d + 1` with a parity decoder, and builds the sparse-vector and
//!   low-rank-plus-sparse matrix instances.
//! * [`verify`] contains the exhaustive oracles that certify every answer,
//!   including an exact matrix-rigidity decision procedure.
//!
//! The guide in `book/` walks through the constructions with runnable
//! examples.

pub mod circuit;
pub mod encoding;
mod error;
pub mod gf2;
pub mod solvers;
pub mod verify;

pub use error::{Error, ErrorClass, Result};
pub use gf2::{AffineSubspace, GF2Matrix, GF2Vector};

/// Chapters of the guide, compiled as doctests so the snippets stay honest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/gf2.md")]
    mod gf2 {}
    #[doc = include_str!("../../../book/src/circuits.md")]
    mod circuits {}
    #[doc = include_str!("../../../book/src/affine-reduce.md")]
    mod affine_reduce {}
    #[doc = include_str!("../../../book/src/subspace-union.md")]
    mod subspace_union {}
    #[doc = include_str!("../../../book/src/one-subspace.md")]
    mod one_subspace {}
    #[doc = include_str!("../../../book/src/encoding.md")]
    mod encoding {}
    #[doc = include_str!("../../../book/src/rigidity.md")]
    mod rigidity {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
