//! Plethystic alphabets built from partition cells, and evaluation of
//! symmetric functions at them.

use crate::qt::{QtPoly, QtRational};

use super::partition::Partition;
use super::symf::{Basis, SymF};
use super::SymError;

/// `B = sum_{c in mu} q^{co-arm} t^{co-leg}`.
pub fn b_mu(mu: &Partition) -> QtPoly {
    let mut p = QtPoly::zero();
    for (i, j) in mu.cells() {
        p += &QtPoly::monomial(mu.co_arm(i, j) as u32, mu.co_leg(i, j) as u32, 1);
    }
    p
}

/// `Pi = prod_{c in mu, c != (1,1)} (1 - q^{co-arm} t^{co-leg})`, with the
/// empty partition mapping to 1.
pub fn pi_mu(mu: &Partition) -> QtPoly {
    let mut p = QtPoly::one();
    for (i, j) in mu.cells() {
        if (i, j) == (1, 1) {
            continue;
        }
        let factor = &QtPoly::one()
            - &QtPoly::monomial(mu.co_arm(i, j) as u32, mu.co_leg(i, j) as u32, 1);
        p = &p * &factor;
    }
    p
}

/// A signed list of q,t-monomials with integer multiplicities — the
/// plethystic alphabets the eigenvalue formulas evaluate at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    /// (multiplicity, q-exponent, t-exponent)
    entries: Vec<(i64, u32, u32)>,
}

impl Alphabet {
    pub fn empty() -> Self {
        Alphabet {
            entries: Vec::new(),
        }
    }

    pub fn new(entries: Vec<(i64, u32, u32)>) -> Self {
        Alphabet { entries }
    }

    /// The cell alphabet of `B_mu`.
    pub fn b_mu(mu: &Partition) -> Self {
        Alphabet {
            entries: mu
                .cells()
                .map(|(i, j)| (1, mu.co_arm(i, j) as u32, mu.co_leg(i, j) as u32))
                .collect(),
        }
    }

    /// `B_mu - 1`.
    pub fn b_mu_minus_one(mu: &Partition) -> Self {
        let mut a = Alphabet::b_mu(mu);
        a.entries.push((-1, 0, 0));
        a
    }

    /// `p_j` evaluated at this alphabet:
    /// `sum_c mult(c) * (q^a t^b)^j`.
    pub fn power_sum(&self, j: u32) -> QtPoly {
        let mut p = QtPoly::zero();
        for &(mult, qe, te) in &self.entries {
            p += &QtPoly::monomial(qe * j, te * j, mult);
        }
        p
    }
}

/// `f[A]`: expand `f` in power sums and substitute `p_j -> p_j[A]`.
pub fn eval_at_alphabet(f: &SymF, alphabet: &Alphabet) -> Result<QtRational, SymError> {
    let in_p = f.convert(Basis::Power)?;
    let mut acc = QtRational::zero();
    for (lambda, c) in in_p.coeffs() {
        let mut term = c.clone();
        for &part in lambda.parts() {
            term = &term * &alphabet.power_sum(part as u32).into();
        }
        acc += &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[u8]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn b_mu_small() {
        assert_eq!(b_mu(&pt(&[1])).to_string(), "1");
        assert_eq!(b_mu(&pt(&[2])).to_string(), "1 + q");
        assert_eq!(b_mu(&pt(&[1, 1])).to_string(), "1 + t");
        assert_eq!(b_mu(&pt(&[2, 1])).to_string(), "1 + q + t");
        assert!(b_mu(&Partition::empty()).is_zero());
    }

    #[test]
    fn pi_mu_small() {
        assert_eq!(pi_mu(&Partition::empty()).to_string(), "1");
        assert_eq!(pi_mu(&pt(&[1])).to_string(), "1");
        assert_eq!(pi_mu(&pt(&[2])).to_string(), "1 - q");
        assert_eq!(pi_mu(&pt(&[1, 1])).to_string(), "1 - t");
        assert_eq!(pi_mu(&pt(&[2, 1])).to_string(), "1 - q - t + q*t");
    }

    #[test]
    fn elementary_evaluations() {
        // e_1[B_2] = 1 + q; e_2[B_2] = e_2[1 + q] = q.
        let b2 = Alphabet::b_mu(&pt(&[2]));
        assert_eq!(
            eval_at_alphabet(&SymF::e(1), &b2).unwrap().to_string(),
            "1 + q"
        );
        assert_eq!(eval_at_alphabet(&SymF::e(2), &b2).unwrap().to_string(), "q");
    }

    #[test]
    fn empty_alphabet_kills_positive_degree() {
        // B_{[1]} - 1 is the empty alphabet: f[0] = 0 for positive degree.
        let a = Alphabet::b_mu_minus_one(&pt(&[1]));
        for f in [SymF::e(2), SymF::p(3), SymF::h(1)] {
            assert!(eval_at_alphabet(&f, &a).unwrap().is_zero());
        }
        // Degree 0 is untouched.
        assert_eq!(
            eval_at_alphabet(&SymF::one(Basis::Power), &a).unwrap(),
            QtRational::one()
        );
    }
}
