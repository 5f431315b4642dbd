//! File formats, reports and the command-line driver around `nsat-core`.

pub mod cli;
pub mod format;
pub mod report;

pub use format::{export_dot, parse_family, parse_pattern, serialize_family, serialize_pattern, FormatError};
