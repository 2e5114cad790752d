//! Exact symbolic symmetric functions over Q(q,t).
//!
//! Partitions carry the cell geometry (arm/leg/co-arm/co-leg) that feeds
//! the eigenvalue alphabets; [`SymF`] is a basis-tagged coefficient map
//! with exact conversions between the power, monomial, elementary,
//! homogeneous, Schur and modified Macdonald bases. On top sit the
//! operator calculus ([`nabla`], [`delta`], [`delta_prime`],
//! [`pi_operator`], [`theta`], [`h_perp`], [`hall_inner`]) and the
//! `E_{n,k}` family.
//!
//! Macdonald expansions are the dominant cost; they are memoised per
//! degree and optionally cached on disk (see [`set_cache_dir`]).

mod alphabet;
pub(crate) mod classical;
mod enk;
mod macdonald;
mod operators;
mod partition;
mod symf;

pub use alphabet::{b_mu, eval_at_alphabet, pi_mu, Alphabet};
pub use enk::e_nk;
pub use macdonald::{cache_dir, cache_stats, set_cache_dir};
pub use operators::{delta, delta_prime, h_perp, hall_inner, nabla, pi_operator, theta};
pub use partition::Partition;
pub use symf::{Basis, SymF};

/// Largest supported homogeneous degree. Everything above is rejected
/// rather than attempted: table sizes grow too fast to be useful at desk
/// scale.
pub const DEGREE_BOUND: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("not a valid partition: {0}")]
    BadPartition(String),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("{nvars} variables cannot faithfully carry degree {degree}")]
    TooFewVariables { nvars: usize, degree: usize },
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error(transparent)]
    Arith(#[from] crate::qt::QtError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt::QtRational;

    #[test]
    fn degree_one_bases_coincide() {
        let e = SymF::e(1);
        for basis in Basis::all() {
            let c = e.convert(basis).unwrap();
            assert_eq!(c.coeffs().len(), 1);
            assert_eq!(
                c.coeff(&Partition::single(1)),
                QtRational::one(),
                "{basis:?}"
            );
        }
    }

    #[test]
    fn round_trips_are_identities() {
        let cases = [
            SymF::e(2),
            SymF::p(2),
            SymF::e(4),
            SymF::s(Partition::new(vec![2, 1]).unwrap()),
            SymF::htilde(Partition::new(vec![2, 2]).unwrap()),
            SymF::h(3).mul(&SymF::e(2)).unwrap(),
        ];
        for f in cases {
            for basis in Basis::all() {
                let round = f.convert(basis).unwrap().convert(f.basis()).unwrap();
                assert_eq!(round.coeffs(), f.coeffs(), "{basis:?}");
            }
        }
    }

    #[test]
    fn classic_degree_two_identities() {
        let e2 = SymF::e(2).convert(Basis::Monomial).unwrap();
        assert_eq!(e2.to_string(), "m[1,1]");
        let p2 = SymF::p(2).convert(Basis::Monomial).unwrap();
        assert_eq!(p2.to_string(), "m[2]");
        let h2 = SymF::h(2).convert(Basis::Monomial).unwrap();
        assert_eq!(h2.to_string(), "m[2] + m[1,1]");
    }

    #[test]
    fn en_macdonald_round_trip() {
        for n in 1..=5usize {
            let e = SymF::e(n);
            let via = e
                .convert(Basis::Macdonald)
                .unwrap()
                .convert(Basis::Monomial)
                .unwrap();
            assert_eq!(via, e.convert(Basis::Monomial).unwrap(), "degree {n}");
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let err = SymF::e(8).convert(Basis::Monomial).unwrap_err();
        assert!(matches!(
            err,
            SymError::DegreeBound {
                degree: 8,
                bound: 7
            }
        ));
    }

    #[test]
    fn xpoly_bridge() {
        let m1 = SymF::m(Partition::single(1));
        assert_eq!(m1.to_xpoly(2).unwrap().to_string(), "x1 + x2");
        let e2 = SymF::e(2);
        assert_eq!(e2.to_xpoly(2).unwrap().to_string(), "x1*x2");
        // Too few variables is an error, not a silent truncation.
        assert!(e2.to_xpoly(1).is_err());
        // Round trip through the expansion.
        let f = SymF::s(Partition::new(vec![2, 1]).unwrap());
        let xp = f.to_xpoly(3).unwrap();
        let back = SymF::from_xpoly(&xp).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn from_xpoly_rejects_asymmetric_input() {
        let xp = crate::qt::XPoly::var(2, 1);
        assert!(matches!(SymF::from_xpoly(&xp), Err(SymError::NotSymmetric)));
    }
}
