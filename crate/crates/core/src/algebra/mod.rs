//! Exact rational scalars and the sparse graded polynomial/series ring.

pub mod json;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod series;
pub mod var;

pub use monomial::Monomial;
pub use poly::Poly;
pub use rational::{rat, rat_int, Rational};
pub use series::{substitute, substitute_all, Policy, TruncatedSeries};
pub use var::{Family, VarId};

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("differentiation by zeta is not defined on polynomials")]
    DifferentiateByZeta,
    #[error("cannot substitute into half-integer exponent of {var}")]
    HalfIntegerExponent { var: String },
    #[error("cannot substitute into negative exponent of {var}")]
    NegativeExponent { var: String },
    #[error("parse error: {0}")]
    Parse(String),
}
