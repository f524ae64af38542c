//! Finite-dimensional quasi-probability representations of quantum mechanics.
//!
//! The crate works with Hermitian operators on `C^n` and provides
//!
//! - [`operator`] and [`spectral`]: dense Hermitian matrices, a cyclic Jacobi
//!   eigensolver, positivity and effect-interval tests;
//! - [`frame`]: operator frames summing to the identity, informational
//!   completeness via Gram rank, dual frames via Gram inversion;
//! - [`representation`]: the maps `T`, `S`, `T′`, `T⁻¹` of a frame basis and
//!   certification of which of `T`, `S` fails to be positive;
//! - [`coexistence`]: coexistence (joint measurability) of effect pairs,
//!   the convex-combination certificate combiner and the ε-neighborhood
//!   approximation experiment;
//! - [`cli`]: the `qprep` command line and its JSON reports.

#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cli;
pub mod coexistence;
pub mod error;
pub mod frame;
pub mod lp;
pub mod operator;
pub mod random;
pub mod representation;
pub mod spectral;

pub use error::{Error, Result};
pub use frame::{CompletenessReport, DualFrame, Frame};
pub use operator::{Effect, HermitianOperator, Matrix, MatrixJson, State};
pub use representation::{NegativityReport, QPRepresentation, QuasiProbVector};
pub use spectral::{eig, hs_inner, in_effect_interval, is_psd, Spectrum};
