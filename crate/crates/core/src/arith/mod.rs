//! Exact and ball arithmetic building blocks.

pub mod bigfloat;
pub mod combinatorics;
pub mod pfq;
pub mod poly;
pub mod rational;
pub mod series_value;
pub(crate) mod summation;

pub use bigfloat::{BigFloat, Round};
pub use combinatorics::{
    elementary_symmetric, elementary_symmetric_all, pochhammer, pochhammer_product, stirling2,
    stirling2_int,
};
pub use pfq::{pfq_eval, pfq_eval_complex, Convergence};
pub use poly::Poly;
pub use rational::{parse_rational, parse_rational_list, ComplexRational, Rational};
pub use series_value::{ComplexSeriesValue, SeriesValue};
