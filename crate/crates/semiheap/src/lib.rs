//! File formats, multi-threaded drivers and the command-line interface for
//! [`semiheap_core`].

pub mod cli;
pub mod format;
pub mod parallel;

pub use semiheap_core as core;
