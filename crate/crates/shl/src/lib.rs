//! File formats, report emission, calibration caching and the command line
//! for `shl-core`.

pub mod cache;
pub mod cli;
pub mod format;
pub mod registry;
pub mod report;
pub mod verify;
