//! Exact arithmetic: Laurent polynomials, rational functions, truncated
//! series and dense matrices over them.

mod dense;
mod json;
mod matrix;
mod poly;
mod ratfun;
mod series;

pub use matrix::{Matrix, PolyMatrix, RatMatrix, Ring};
pub(crate) use poly::write_terms;
pub use poly::LaurentPoly;
pub use ratfun::RatFun;
pub use series::TruncatedSeries;
