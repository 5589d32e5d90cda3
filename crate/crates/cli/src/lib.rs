//! Command-line workbench for q-ary shortened-1-perfect-like codes.
//!
//! The binary lives in `main.rs`; [`repro`] holds the acceptance criteria so
//! that integration tests can run them in-process.

pub mod repro;
