pub mod curve;
pub mod engine;
pub mod error;
pub mod invariants;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod ratfun;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
