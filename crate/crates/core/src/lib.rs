//! Exact engine for faces of convex rectilinear drawings of complete graphs.

pub mod analysis;
pub mod arrangement;
pub mod cyclotomic;
pub mod drawings;
pub mod error;
pub mod interval;
pub mod report;

pub use error::{Error, Result};
