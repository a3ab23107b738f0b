//! File formats, report rendering, parallel verification and the command
//! line for [`cayley_core`].

pub mod cli;
pub mod format;
pub mod parallel;
pub mod report;

pub use cayley_core;
