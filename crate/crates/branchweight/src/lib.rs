//! Document IO, reports and the command-line driver for `branchweight-core`.

pub mod cli;
pub mod document;
pub mod graph;
pub mod report;

pub use document::{load, load_str, save, to_canonical, ComplexDocument, DocError, Resolved};
