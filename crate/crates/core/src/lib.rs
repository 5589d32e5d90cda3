//! Toolkit for q-ary codes with the parameters of shortened 1-perfect codes.
//!
//! The crate is organized bottom-up:
//!
//! - [`gf`]: finite-field tables for q ∈ {2,3,4,5,7,8,9} and plain mod-q sums.
//! - [`space`]: packed words, explicit and oracle codes, partitions, and the
//!   elementary surgeries (shorten, puncture, concatenate, shells, translates).
//! - [`spectra`]: distance distributions, Krawtchouk polynomials, and the dual
//!   transform, all in exact rational arithmetic.
//! - [`bounds`]: closed-form multifold-packing and multiple-covering bounds.
//! - [`verify`]: exhaustive decision procedures over the Hamming space.
//! - [`construct`]: Hamming codes, sum-codes, the D-partition, and the
//!   concatenation constructions.
//! - [`lengthen`]: exact lengthenability deciders and the H(3,3) classifier.
//! - [`catalog`]: the embedded H(4,4) partition and the text file formats.

pub mod bounds;
pub mod budget;
pub mod catalog;
pub mod construct;
pub mod error;
pub mod gf;
pub mod lengthen;
pub mod space;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
