//! Exact algebra for generic determinantal varieties and the local models of
//! Brill–Noether loci.
//!
//! Everything here is pure and allocation-only (`no_std` + `alloc`): sparse
//! polynomials over `Q` or `F_p`, polynomial matrices and their minors,
//! truncated formal maps, cohomology jump ideals of free complexes, the
//! universal matrix of a truncated L∞ pair, and closed-form singularity
//! invariants with independent cross-checks.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod brill_noether;
pub mod determinantal;
pub mod error;
pub mod formal;
pub mod invariants;
pub mod jump;
pub mod linalg;
pub mod matrix;
pub mod petri;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod tower;

pub use error::{Error, Result};
pub use formal::{invert_formal, FormalMap, TruncationOrder};
pub use linalg::DenseMatrix;
pub use matrix::PolyMatrix;
pub use poly::{Monomial, Polynomial, Ring};
pub use scalar::{Domain, Scalar};
