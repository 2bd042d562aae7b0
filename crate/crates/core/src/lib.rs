pub mod causes;
pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod dot;
pub mod error;
pub mod io;
pub mod laws;
pub mod mapping;
pub mod model;
pub mod prob;
pub mod random;
pub mod responsiveness;
pub mod structural;

pub use error::{Error, Result};
