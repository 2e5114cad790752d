//! Exact verification toolkit for the valley Delta conjecture ecosystem.
//!
//! The crate has four layers:
//!
//! - [`qt`] — exact arithmetic: integer polynomials and rational functions
//!   in `q,t`, q-analogues, and polynomials in `x_1..x_N` over Q(q,t);
//! - [`paths`] — decorated partially labelled Dyck paths: statistics
//!   (`area`, `dinv`, `touch`), exhaustive enumeration, generating
//!   polynomials, and the pushing algorithm;
//! - [`symfunc`] — symbolic symmetric functions: partitions, the classical
//!   bases plus the modified Macdonald basis, plethystic evaluation, the
//!   eigenoperators nabla / Delta / Theta / Pi, the `E_{n,k}` family, the
//!   Hall scalar product and `h_m`-skewing;
//! - [`check`] — assembles both sides of every identity and conjecture
//!   instance, compares them exactly, and emits machine-readable reports.
//!
//! Everything is exact: no floating point anywhere, and every comparison
//! is polynomial identity over Q(q,t).

pub mod check;
pub mod linalg;
pub mod paths;
pub mod qt;
pub mod symfunc;

pub use check::{CheckReport, Session};
pub use paths::LabelledPath;
pub use qt::{QtPoly, QtRational, XPoly};
pub use symfunc::{Partition, SymF};

// The guide chapters double as doc-tests so the book stays in sync with
// the crate; see book/src.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/qt-arithmetic.md")]
    mod qt_arithmetic {}
    #[doc = include_str!("../../../book/src/labelled-paths.md")]
    mod labelled_paths {}
    #[doc = include_str!("../../../book/src/pushing.md")]
    mod pushing {}
    #[doc = include_str!("../../../book/src/symmetric-functions.md")]
    mod symmetric_functions {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
}
