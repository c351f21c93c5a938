//! File formats, configuration, random inputs and the parallel verification
//! suite on top of `braidcov-core`.

pub mod config;
pub mod formats;
pub mod random;
pub mod suite;

pub use braidcov_core as core;
