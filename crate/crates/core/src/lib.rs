//! Reconstruction of simple convex polytopes from their moments.

pub mod arith;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod matching;
pub mod moments;
pub mod poly;
pub mod recovery;

pub use error::{Error, Result};
