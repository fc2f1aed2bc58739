pub mod bench;
pub mod error;
pub mod experiment;
mod kv;
pub mod linalg;
pub mod operators;
pub mod par;
pub mod recovery;
pub mod rip;
pub mod rng;
pub mod sampling;
pub mod scalar;
pub mod transforms;

pub use error::{Error, Result};
