pub mod certificate;
pub mod cli;
pub mod combinatorics;
pub mod curves;
pub mod error;
pub mod hull;
pub mod poly;
pub mod props;
pub mod rational;
pub mod representation;
pub mod svg;

pub use error::{Error, Result};
