pub mod analytics;
pub mod code;
pub mod error;
pub mod gates;
pub mod graph;
pub mod montecarlo;
pub mod pauli;
pub mod poly;
pub mod report;
pub mod strategy;
pub mod tableau;

pub use error::{Error, Result};
