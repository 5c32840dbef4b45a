//! Heavy-tail diagnostics: Zipf, mean-excess, moment-ratio and Zenga plots,
//! zone classification, a combined verdict, and Monte Carlo power studies.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod diagnostics;
pub mod distributions;
pub mod empirical;
mod error;
pub mod math;
pub mod powerstudy;
pub mod rng;
mod sample;
mod series;
pub mod stats;

pub use distributions::{DistributionModel, MeanExcess, ZengaCurve};
pub use error::{Error, Result};
pub use sample::{Ingest, Sample};
pub use series::{PlotSeries, Point, Scale};
