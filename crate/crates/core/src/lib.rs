//! Exact symbolic engine for Z_2^n-graded commutative algebra and graded
//! block matrices. Builds the chart atlas of the grassmannian G_k(m), computes
//! all transition maps through the pasting equation, and machine-verifies the
//! structural identities the construction rests on: the cocycle conditions,
//! the compatibility of the GL(m) action with chart gluing, and transitivity
//! of that action.
//!
//! All arithmetic is exact: coefficients are rational functions over
//! arbitrary-precision rationals, and series live in an honest quotient ring
//! at a configurable truncation order.

pub mod algebra;
pub mod error;
pub mod grading;
pub mod grassmannian;
pub mod group_action;
pub mod report;
pub mod sample;
pub mod supermatrix;
pub mod verify;

pub use error::{Error, Result};
