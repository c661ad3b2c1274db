//! File formats, experiments and benchmarks around `skdepth-core`.

pub mod bench;
pub mod compute;
pub mod error;
pub mod experiment;
pub mod gadget;
pub mod io;

pub use error::{Error, Result};
pub use skdepth_core as core;
