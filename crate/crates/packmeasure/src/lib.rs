//! Standard-library companion to `packmeasure-core`: SNAP edge-list IO,
//! JSON formats, rayon-parallel drivers, seed selection by method tag and
//! the experiment harness behind the `packmeasure` binary.

pub mod bench;
pub mod error;
pub mod formats;
pub mod io;
pub mod parallel;
pub mod select;

pub use error::{Error, Result};
pub use packmeasure_core as core;
