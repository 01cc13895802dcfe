//! Exact symbolic toolkit for regular F-manifolds with Euler vector field in
//! canonical coordinates.

pub mod arith;
pub mod error;

pub use arith::{Polynomial, RatExpr, Rational, Space};
pub use error::{Error, Result};
pub mod fmanifold;
pub mod a0;
pub mod hierarchy;
pub mod connection;
pub mod curvature;
pub mod dual;
pub mod metric;
pub mod tables;
pub mod specfile;
pub mod report;
