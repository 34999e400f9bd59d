//! Exact-arithmetic engine for root systems of types B, C, and D.
//!
//! The crate computes Weyl orbits, saturated weight systems with their
//! Freudenthal multiplicities, hyperplane excision counts, and the counting
//! certificates that obstruct smoothness of compact-group orbit spaces.
//! Every quantity is an exact integer or rational: weights are stored with
//! doubled coordinates so spinor classes (half-integer coordinates) stay
//! lossless, and all pairings reduce to integer arithmetic.
//!
//! The crate is `no_std` (with `alloc`); IO, CLI, and serialization live in
//! the companion `weylcert-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod criteria;
mod error;
pub mod excision;
pub(crate) mod linalg;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod rootsys;
pub mod weightset;
pub mod weyl;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
