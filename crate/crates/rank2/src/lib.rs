//! File formats, device data, parallel drivers and the `rank2` command-line
//! tool on top of [`rank2_core`].

pub mod calibration;
pub mod circuit_file;
pub mod config;
pub mod coupling;
mod error;
pub mod parallel;
pub mod report;

pub use error::{Error, Result};
pub use rank2_core;
