//! Exact computations around evaluation codes on projective and affine
//! spaces over finite fields: GF(p^e) arithmetic, point enumeration,
//! polynomial evaluation, (projective) Reed-Muller codes, generalized
//! Hamming weights via exhaustive or randomized subspace search, the
//! closed-form bounds they are measured against, and explicit extremal
//! witness constructions.

pub mod bounds;
pub mod cache;
pub mod codes;
pub mod error;
pub mod extremal;
pub mod gf;
pub mod hweights;
pub mod linalg;
pub mod poly;
pub mod pspace;
pub mod verify;

pub use error::{Error, Result};
