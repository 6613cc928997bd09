//! Preference disaggregation for criteria that evolve over time.
//!
//! The crate learns additive value models from a decision-maker's ranking of
//! alternatives. Each criterion is observed as a time series; the series are
//! summarized by descriptive measures (mean, trend), one piecewise-linear
//! marginal value function is fitted per (measure, criterion) pair, and the
//! resulting linear programs are solved with the bundled dense simplex solver.
//!
//! Modules, bottom-up:
//!
//! - [`timeseries`]: raw tensors, descriptive measures and evaluation scales.
//! - [`lp`]: linear program model and two-phase simplex solver.
//! - [`disagg`]: UTA / UTASTAR / UTASTAR-T programs, fitted models, rankings.
//! - [`postopt`]: classical min/max post-optimization and the Monte Carlo
//!   weighted-sum exploration of the optimal face.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod disagg;
mod error;
pub mod lp;
pub mod postopt;
pub mod timeseries;

pub use error::{Error, Result};
