//! File formats, polygon generation, SVG export and the command line for
//! `sightline-core`.

// Format errors carry a path and position; they are rare, so size is fine.
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod format;
pub mod random;
pub mod svg;

pub use format::{oracle_from_file, FormatError, Rat};
pub use random::random_simple_polygon;
pub use svg::{export_frames, export_svg};
