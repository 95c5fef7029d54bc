//! Library side of the `nonsep` CLI: verification suites and SVG output.

pub mod suites;
pub mod svg;
