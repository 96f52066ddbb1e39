pub mod energy;
pub mod cli;
pub mod error;
pub mod lattice_domain;
pub mod minimization;
pub mod special_functions;
pub mod verification;

pub use error::{Error, Result};
