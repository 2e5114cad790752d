use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::parse;
use super::QtError;

/// A monomial `q^a t^b`. Ordered graded-lexicographically with `q > t`:
/// first by total degree, then by descending power of `q`, so that the
/// canonical term sequence of `(1-q)(1-t)` reads `1 - q - t + q*t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QtMono {
    pub q: u32,
    pub t: u32,
}

impl QtMono {
    pub const ONE: QtMono = QtMono { q: 0, t: 0 };

    pub fn new(q: u32, t: u32) -> Self {
        QtMono { q, t }
    }

    pub fn degree(&self) -> u32 {
        self.q + self.t
    }

    fn mul(&self, other: &QtMono) -> QtMono {
        QtMono::new(self.q + other.q, self.t + other.t)
    }

    fn divides(&self, other: &QtMono) -> bool {
        self.q <= other.q && self.t <= other.t
    }
}

impl Ord for QtMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(other.q.cmp(&self.q))
    }
}

impl PartialOrd for QtMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exact polynomial in `q` and `t` with arbitrary-precision integer
/// coefficients. Terms are stored in canonical (graded-lex) order and no
/// stored term has a zero coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QtPoly {
    terms: BTreeMap<QtMono, BigInt>,
}

impl QtPoly {
    pub fn zero() -> Self {
        QtPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        QtPoly::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        QtPoly::monomial(0, 0, c)
    }

    /// The single term `c * q^qe * t^te` (empty if `c = 0`).
    pub fn monomial<T: Into<BigInt>>(qe: u32, te: u32, c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(QtMono::new(qe, te), c);
        }
        QtPoly { terms }
    }

    pub fn q() -> Self {
        QtPoly::monomial(1, 0, 1)
    }

    pub fn t() -> Self {
        QtPoly::monomial(0, 1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&QtMono::ONE)
                .is_some_and(|c| c.is_one())
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&QtMono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, qe: u32, te: u32) -> BigInt {
        self.terms
            .get(&QtMono::new(qe, te))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest term in canonical order, if any.
    pub fn leading(&self) -> Option<(&QtMono, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// First term in canonical order, if any.
    pub fn lowest(&self) -> Option<(&QtMono, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, mono: QtMono, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> QtPoly {
        let mut acc = QtPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exchange the roles of `q` and `t`.
    pub fn swap_qt(&self) -> QtPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (QtMono::new(m.t, m.q), c.clone()))
            .collect();
        QtPoly { terms }
    }

    /// Substitute integers for `q` and `t`.
    pub fn eval(&self, q: &BigInt, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            acc += c * q.pow(m.q) * t.pow(m.t);
        }
        acc
    }

    /// `(g, a, b)` with `g` the positive gcd of all coefficients and
    /// `q^a t^b` the largest monomial dividing every term. Returns
    /// `(1, 0, 0)` for the zero polynomial.
    pub fn content(&self) -> (BigInt, u32, u32) {
        if self.is_zero() {
            return (BigInt::one(), 0, 0);
        }
        let mut g = BigInt::zero();
        let mut qa = u32::MAX;
        let mut tb = u32::MAX;
        for (m, c) in &self.terms {
            g = g.gcd(c);
            qa = qa.min(m.q);
            tb = tb.min(m.t);
        }
        (g, qa, tb)
    }

    /// Divide every term by `g * q^a t^b`; all divisions must be exact.
    pub fn div_content(&self, g: &BigInt, qa: u32, tb: u32) -> QtPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (quot, rem) = c.div_rem(g);
            debug_assert!(rem.is_zero());
            terms.insert(QtMono::new(m.q - qa, m.t - tb), quot);
        }
        QtPoly { terms }
    }

    /// Exact polynomial division; `None` when `self` is not a multiple of
    /// `divisor`. Runs leading-term elimination in the monomial order.
    pub fn div_exact(&self, divisor: &QtPoly) -> Option<QtPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dm, dc) = divisor.leading().unwrap();
        let (dm, dc) = (*dm, dc.clone());
        let mut rem = self.clone();
        let mut quot = QtPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            if !dm.divides(rm) {
                return None;
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = QtMono::new(rm.q - dm.q, rm.t - dm.t);
            let step = QtPoly::monomial(qm.q, qm.t, qc);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    pub fn parse(s: &str) -> Result<QtPoly, QtError> {
        let r = parse::parse_rational(s)?;
        r.into_poly().ok_or(QtError::NotAPolynomial)
    }
}

impl fmt::Display for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || (m.q == 0 && m.t == 0) {
                factors.push(abs.to_string());
            }
            if m.q == 1 {
                factors.push("q".to_string());
            } else if m.q > 1 {
                factors.push(format!("q^{}", m.q));
            }
            if m.t == 1 {
                factors.push("t".to_string());
            } else if m.t > 1 {
                factors.push(format!("t^{}", m.t));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for QtPoly {
    type Err = QtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QtPoly::parse(s)
    }
}

impl Add for &QtPoly {
    type Output = QtPoly;

    fn add(self, rhs: &QtPoly) -> QtPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &QtPoly {
    type Output = QtPoly;

    fn sub(self, rhs: &QtPoly) -> QtPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &(-c));
        }
        out
    }
}

impl Neg for &QtPoly {
    type Output = QtPoly;

    fn neg(self) -> QtPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        QtPoly { terms }
    }
}

impl Mul for &QtPoly {
    type Output = QtPoly;

    fn mul(self, rhs: &QtPoly) -> QtPoly {
        let mut out = QtPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl AddAssign<&QtPoly> for QtPoly {
    fn add_assign(&mut self, rhs: &QtPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QtPoly {
            type Output = QtPoly;
            fn $method(self, rhs: QtPoly) -> QtPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QtPoly> for QtPoly {
            type Output = QtPoly;
            fn $method(self, rhs: &QtPoly) -> QtPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn canonical_order_and_display() {
        // M = (1-q)(1-t) expands to 1 - q - t + q*t.
        let m = &(&QtPoly::one() - &QtPoly::q()) * &(&QtPoly::one() - &QtPoly::t());
        assert_eq!(m.to_string(), "1 - q - t + q*t");
        assert_eq!(m.coeff(1, 1), big(1));
        assert_eq!(m.coeff(1, 0), big(-1));
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = &QtPoly::q() - &QtPoly::q();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn display_coefficients() {
        let p = &(&QtPoly::monomial(2, 0, 2) - &QtPoly::constant(3)) + &QtPoly::monomial(0, 2, -1);
        assert_eq!(p.to_string(), "-3 + 2*q^2 - t^2");
    }

    #[test]
    fn div_exact_geometric() {
        let num = &QtPoly::one() - &QtPoly::monomial(2, 0, 1);
        let den = &QtPoly::one() - &QtPoly::q();
        let quot = num.div_exact(&den).unwrap();
        assert_eq!(quot, &QtPoly::one() + &QtPoly::q());
        // 1 + q is not a multiple of 1 - q.
        assert!(quot.div_exact(&den).is_none());
    }

    #[test]
    fn eval_integers() {
        let p = &(&QtPoly::q() * &QtPoly::t()) + &QtPoly::constant(5);
        assert_eq!(p.eval(&big(2), &big(3)), big(11));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1 - q - t + q*t", "-3 + 2*q^2 - t^2", "q*t^4"] {
            let p = QtPoly::parse(s).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }
}
