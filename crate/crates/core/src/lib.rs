//! Unipotent `(d,1)`-series of finite reductive groups of classical type and
//! the depth-zero unipotent `ℓ`-block decomposition of `Sp_2n(F)` and `SL_n(F)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`combinatorics`]: β-sets, partitions and symbols with their ranks,
//!   defects, hooks, cores and cocores.
//! - [`cyclotomic`]: exact cyclotomic polynomial arithmetic (generic over the
//!   coefficient ring), multiplicative orders and factored order polynomials.
//! - [`group`]: descriptions of finite reductive groups as products of
//!   simple factors.
//! - [`series`]: unipotent characters and their partitions into 1-series,
//!   d-series and `(d,1)`-series.
//! - [`exceptional`]: user supplied `(d,1)`-series tables for exceptional types.
//! - [`blocks`]: depth-zero unipotent types of `Sp_2n(F)` and their `ℓ`-blocks.
//! - [`oracle`]: brute-force verifiers for every closed form used above.

pub mod blocks;
pub mod combinatorics;
pub mod cyclotomic;
mod error;
pub mod exceptional;
pub mod group;
pub mod oracle;
pub mod series;

pub use error::{Error, Result};

pub use combinatorics::{BetaSet, Partition, Symbol};
pub use cyclotomic::{CycFactorization, CycPoly};
pub use group::{Family, FiniteGroupSpec, SimpleFactor};

/// Cyclotomic polynomials with machine-word coefficients.
pub type IntPoly = CycPoly<i64>;
/// Cyclotomic polynomials with 128-bit coefficients.
pub type WidePoly = CycPoly<i128>;
/// Cyclotomic polynomials with unbounded integer coefficients.
pub type BigPoly = CycPoly<num_bigint::BigInt>;
