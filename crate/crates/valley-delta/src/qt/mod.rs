//! Exact arithmetic foundation: integer-coefficient polynomials in `q,t`,
//! the fraction field Q(q,t), q-analogues, and truncated polynomials in
//! `x_1..x_N` over Q(q,t).
//!
//! All values are immutable after construction and every operation is a
//! pure function, so they can be shipped freely between worker threads.

mod gcd;
mod parse;
mod poly;
mod qseries;
mod rational;
mod xpoly;

pub use poly::{QtMono, QtPoly};
pub use qseries::{q_analogue, q_binomial, q_factorial, q_pochhammer};
pub use rational::QtRational;
pub use xpoly::XPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QtError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands have {0} and {1} x-variables")]
    MismatchedVars(usize, usize),
    #[error("variable x{0} still occurs")]
    VariableInUse(usize),
    #[error("expression is not a polynomial")]
    NotAPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
}
