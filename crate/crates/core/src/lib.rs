pub mod degen;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod invariants;
pub mod io;
pub mod iso;
pub mod kato;
pub mod linalg;
pub mod random;

pub use error::{Error, Result};
