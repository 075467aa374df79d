pub mod algebra;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod path;
pub mod quiver;
pub mod surface;

pub use error::{Error, Result};
