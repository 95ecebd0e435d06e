pub mod catalog;
pub mod error;
pub mod exact_arith;
pub mod fusion;
pub mod kk;
pub mod matrix;
pub mod modular;
pub mod reports;
pub mod verify;

pub use error::{Error, Result};
