//! Cylindrical algebraic decomposition and cell-complex audits in low
//! dimension, with exact arithmetic throughout.

pub mod arith;
pub mod cadbuild;
pub mod decomp;
pub mod error;
pub mod props;
pub mod topo;

pub use error::{Error, Result};
