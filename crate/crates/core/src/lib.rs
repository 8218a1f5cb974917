pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod cartier;
pub mod census;
pub mod cli;
pub mod dieudonne;
pub mod eo;
