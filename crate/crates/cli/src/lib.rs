//! Command-line front end for `bincurve_core`: verification suites, JSON
//! reports and a scan cache.

pub mod cache;
pub mod cli;
pub mod report;
pub mod scan;
pub mod suites;
