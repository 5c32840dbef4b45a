//! File formats, SVG figures, parallel power studies and the command-line
//! front end for `paretocheck-core`.

pub mod cli;
pub mod error;
pub mod figures;
pub mod io;
pub mod json;
pub mod parallel;
pub mod render;

pub use error::{Error, Result};
