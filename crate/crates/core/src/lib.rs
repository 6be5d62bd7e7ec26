//! Exact counting of partitions of a `2 x n` rectangle into integer-sided
//! blocks, where two partitions are equal when they use the same multiset of
//! blocks.
//!
//! The crate is `no_std` and only needs `alloc`. IO, caching and the command
//! line live in the companion `rectcount` crate.
//!
//! - [`partcore`]: classical partition counts over arbitrary-precision integers
//! - [`tile2`]: `p(2,n)`, the one-row-block count, symmetric counts `S(n)`/`T(n)`
//! - [`restrict2`]: restricted counts `p_{k,l}(2,n)` and their closed forms
//! - [`mary2`]: m-ary partitions and their rectangular analogue, with congruences
//! - [`asympt`]: floating-point asymptotic evaluators and Benford diagnostics
//! - [`qpfit`]: exact-rational quasi-polynomial discovery
//! - [`oracle`]: brute-force geometric tiling enumeration

#![no_std]

extern crate alloc;

pub mod asympt;
pub mod bits;
mod error;
pub mod mary2;
pub mod oracle;
pub mod partcore;
pub mod qpfit;
pub mod restrict2;
pub mod tile2;

pub use error::{Error, Result};
pub use partcore::{Natural, Partition, SeqTable};
