pub mod arith;
pub mod error;
pub mod families;
pub mod moments;
pub mod orthopoly;
pub mod transforms;
pub mod weight;

pub use arith::{BigFloat, Poly, Rational, SeriesValue};
pub use error::{Error, Result};
pub use weight::WeightSpec;
