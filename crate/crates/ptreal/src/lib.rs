//! Growth scans, CSV output and decimal rendering on top of `ptreal-core`.
//!
//! The binary in `main.rs` is a thin layer over this library.

pub mod decimal;
pub mod growth;
pub mod scan;

pub use growth::{classify, Growth, GrowthVerdict};
pub use scan::{run_scan, write_csv, ParamRange, ScanRow, Target};
