//! Verification toolkit for flat affine geometry.
//!
//! The crate covers classical affine maps of ℝⁿ ([`affine`]), left-symmetric
//! algebras and their étale affine data ([`lsa`]), group charts, developing
//! maps and geodesics ([`devmap`]), stabilizer groups of open sets and their
//! Lie algebras ([`stabilizer`]), the numeric kernels they share
//! ([`numerics`]) and a report-producing command layer ([`cli`]).

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod affine;
pub mod cli;
pub mod devmap;
pub mod error;
pub mod lsa;
pub mod numerics;
pub mod report;
pub mod stabilizer;

pub use error::{Error, Result};
