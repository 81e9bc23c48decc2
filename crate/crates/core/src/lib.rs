pub mod adversary;
pub mod bounds;
pub mod cli;
pub mod constants;
pub mod distributions;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod oracles2d;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;
