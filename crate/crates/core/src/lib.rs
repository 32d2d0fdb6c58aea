//! Exact computations around the BGG correspondence for irregular compact
//! Kähler manifolds: the derivative complex of a cohomology module over the
//! exterior algebra, its exactness and regularity, the gamma series and its
//! Chern/Schur/Segre numbers, and the Hodge-number inequalities they imply.
//!
//! Everything is exact: rationals are arbitrary precision and no floating
//! point is used.

pub mod bggcore;
pub mod chern;
pub mod cli;
pub mod error;
pub mod examples;
pub mod inequality;
pub mod interchange;
pub mod linforms;
pub mod ringkit;

pub use error::{Error, Result};
