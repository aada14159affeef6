//! File formats, parallel drivers and the `mwc` command line, on top of
//! [`mwc_core`].

pub mod cli;
pub mod formats;
pub mod parallel;

pub use cli::run;
