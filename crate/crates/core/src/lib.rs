pub mod data;
pub mod dynamics;
pub mod econ;
pub mod energy;
pub mod error;
pub mod price;
pub mod scenarios;

pub use error::{Error, Result};
