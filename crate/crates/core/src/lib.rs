pub mod asymptotics;
pub mod cli;
pub mod data;
pub mod error;
pub mod jet;
pub mod ode;
pub mod quadrature;
pub mod symbols;

pub use error::{Error, Result};
