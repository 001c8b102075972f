//! Exact symbolic combinatorics of enhanced parameters for classical groups:
//! Jordan-block data with sign characters, their classification predicates,
//! the cuspidal-support reduction, the root data / parameter functions of the
//! attached extended affine Hecke algebras, and exact arithmetic in those
//! algebras at small rank.
//!
//! The crate is `no_std` (alloc only); IO and file formats live in the
//! companion `hecke-cli` crate.

#![no_std]

extern crate alloc;

pub mod enumerate;
pub mod hecke;
pub mod params;
pub mod repdata;
pub mod rootdata;
pub mod support;

pub use num_rational::Rational64;
