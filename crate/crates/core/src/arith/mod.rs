pub mod monomial;
pub mod oneform;
pub mod parse;
pub mod polynomial;
pub mod rational;
pub mod ratexpr;
pub mod space;

pub use monomial::Monomial;
pub use oneform::{integrate_radial, OneForm};
pub use parse::{parse_expr, Bindings};
pub use polynomial::Polynomial;
pub use rational::Rational;
pub use ratexpr::RatExpr;
pub use space::Space;
