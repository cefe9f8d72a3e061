pub mod charfun;
pub mod cli;
pub mod duality;
pub mod error;
pub mod homalg;
pub mod poset;
pub mod sheaf;
pub mod toric;

pub use error::{Error, Result};
