//! Linear algebra over the two-element field.
//!
//! Vectors and matrices are bit-packed into `u64` words. Addition is XOR and
//! multiplication is AND throughout, so there is no separate notion of
//! subtraction anywhere in the crate.

mod affine;
mod matrix;
pub(crate) mod vector;

pub use affine::AffineSubspace;
pub use matrix::GF2Matrix;
pub use vector::GF2Vector;
