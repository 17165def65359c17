//! Exact construction and spectral verification of the symmetric hypercube
//! pseudomoment matrices `Y^(n)`, indexed by subsets of `[n]` of size at most
//! `⌊n/2⌋` with entries `a_{|S △ T|}`.
//!
//! Closed forms are paired with independent enumeration or contraction
//! routes so that every identity can be checked in exact rational arithmetic.

pub mod apolar;
pub mod characters;
pub mod cli;
pub mod combinatorics;
pub mod eigen;
pub mod error;
pub mod export;
pub mod linalg;
pub mod pseudomoments;
pub mod report;
pub mod rng;
pub mod schur;
pub mod spectrum;
pub mod verify;

#[cfg(feature = "lapack")]
extern crate openblas_src;

pub use combinatorics::{Scalar, SubsetIndex};
pub use error::{Error, Result};
