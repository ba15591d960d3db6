//! Cyclotomic cosets, BCH codes over small finite fields, and the machinery to
//! decide when the dual of a narrow-sense BCH code is itself BCH.
//!
//! The two length families of interest are `n = (q^m - 1)/(q + 1)` ("plus",
//! `m` even) and `n = (q^m - 1)/(q - 1)` ("minus", `q ≥ 3`). Closed forms for
//! their largest coset leaders, coset sizes and dually-BCH ranges live in
//! [`cosets::closed_form`]; everything else is brute force that the
//! [`verify`] registry checks them against.

pub mod arith;
pub mod bch;
pub mod cosets;
pub mod distance;
pub mod gf;
pub mod verify;

use thiserror::Error;

pub use bch::{
    BchCode, BchError, CyclicCode, DefiningSet, Recognition, RecognitionStatus, Witness,
};
pub use cosets::{CosetError, CosetTable, CyclotomicCoset, Family};
pub use distance::{DistanceError, DistanceResult, Method, WeightEnumerator};
pub use gf::{FieldTower, GfError, Level, Polynomial};
pub use verify::{ClaimReport, VerifyError};

/// Any error from the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Bch(#[from] BchError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}
