pub mod cli;
pub mod counterexample;
pub mod derivation;
pub mod division;
pub mod dynamic;
pub mod error;
pub mod format;
pub mod kernels;
pub mod matrix;
pub mod random;
pub mod scalar;
pub mod stable_rank;
pub mod triangular;

pub use error::{Error, Orientation, Result};
pub use matrix::Matrix;
pub use scalar::Ring;
