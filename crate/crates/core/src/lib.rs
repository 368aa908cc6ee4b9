//! Persistence landscapes as real-valued random variables, and the
//! nonparametric inference that runs on them.
//!
//! The crate is organised as a pipeline:
//!
//! * [`sampling`] draws seeded point clouds from spheres and tori, or loads
//!   them from CSV files.
//! * [`rips`] builds Vietoris–Rips filtrations and computes persistence
//!   diagrams over GF(2) in homology dimensions 0 and 1.
//! * [`landscape`] turns diagrams into exact piecewise-linear persistence
//!   landscapes and integrates them into scalar samples.
//! * [`inference`] holds the empirical CDF, the plug-in log-sum statistic,
//!   influence-function standard errors and normal-approximation intervals.
//! * [`bootstrap`] generates replicates and the four bootstrap intervals.
//! * [`density`] covers kernel density estimation, cross-validated bandwidth
//!   selection and integrated-risk estimates.
//! * [`pipeline`] wires everything into a reproducible experiment run.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bootstrap;
pub mod density;
pub mod error;
pub mod inference;
pub mod landscape;
pub mod pipeline;
pub mod rips;
pub mod rng;
pub mod sampling;

pub use error::{Error, ErrorKind, Result};
pub use rng::RngStream;
