pub mod cli;
pub mod error;
pub mod family;
pub mod fock;
pub mod measure;
pub mod optics;
pub mod quad;
pub mod specfun;
pub mod states;
pub mod thermal;

pub use error::{Error, Result};
