use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::QtPoly;
use super::{parse, QtError};

/// An element of the field Q(q,t), stored as a fraction of integer
/// `QtPoly`s. Normalisation strips the common integer content and the
/// common monomial factor `q^a t^b`, and signs the denominator so its
/// first canonical term is positive; it does not compute full polynomial
/// gcds, so equality always goes through cross-multiplication.
#[derive(Clone, Debug)]
pub struct QtRational {
    num: QtPoly,
    den: QtPoly,
}

impl QtRational {
    pub fn new(num: QtPoly, den: QtPoly) -> Result<Self, QtError> {
        if den.is_zero() {
            return Err(QtError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    /// Full normalisation: content and sign stripping plus complete
    /// polynomial-gcd reduction. Every stored value is fully reduced;
    /// the arithmetic below relies on that to keep its own gcds small.
    fn normalized(num: QtPoly, den: QtPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() || den.is_one() {
            return QtRational::reduced(num, den);
        }
        // Cheap win first: exact divisibility makes the value polynomial.
        if let Some(q) = num.div_exact(&den) {
            return QtRational {
                num: q,
                den: QtPoly::one(),
            };
        }
        let g = super::gcd::poly_gcd(&num, &den);
        if g.is_one() {
            return QtRational::reduced(num, den);
        }
        QtRational::reduced(
            num.div_exact(&g).expect("gcd divides numerator"),
            den.div_exact(&g).expect("gcd divides denominator"),
        )
    }

    /// Light normalisation for operands already known to be coprime up to
    /// content: strips the common integer content and monomial factor and
    /// fixes the denominator sign.
    fn reduced(num: QtPoly, den: QtPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return QtRational {
                num,
                den: QtPoly::one(),
            };
        }
        if den.is_one() {
            return QtRational { num, den };
        }
        let (gn, qn, tn) = num.content();
        let (gd, qd, td) = den.content();
        let g = gn.gcd(&gd);
        let num = num.div_content(&g, qn.min(qd), tn.min(td));
        let den = den.div_content(&g, qn.min(qd), tn.min(td));
        if den.lowest().unwrap().1.is_negative() {
            QtRational {
                num: -&num,
                den: -&den,
            }
        } else {
            QtRational { num, den }
        }
    }

    pub fn zero() -> Self {
        QtRational {
            num: QtPoly::zero(),
            den: QtPoly::one(),
        }
    }

    pub fn one() -> Self {
        QtRational {
            num: QtPoly::one(),
            den: QtPoly::one(),
        }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        QtPoly::constant(n).into()
    }

    /// `q^e` for any integer `e`, negative exponents landing in the denominator.
    pub fn q_power(e: i64) -> Self {
        if e >= 0 {
            QtPoly::monomial(e as u32, 0, 1).into()
        } else {
            QtRational {
                num: QtPoly::one(),
                den: QtPoly::monomial((-e) as u32, 0, 1),
            }
        }
    }

    /// `t^e` for any integer `e`.
    pub fn t_power(e: i64) -> Self {
        if e >= 0 {
            QtPoly::monomial(0, e as u32, 1).into()
        } else {
            QtRational {
                num: QtPoly::one(),
                den: QtPoly::monomial(0, (-e) as u32, 1),
            }
        }
    }

    pub fn numerator(&self) -> &QtPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QtPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The underlying polynomial when the denominator is trivial.
    pub fn into_poly(self) -> Option<QtPoly> {
        if self.den.is_one() {
            Some(self.num)
        } else {
            None
        }
    }

    pub fn checked_div(&self, rhs: &QtRational) -> Result<QtRational, QtError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn inverse(&self) -> Result<QtRational, QtError> {
        if self.is_zero() {
            return Err(QtError::DivisionByZero);
        }
        // A reduced fraction flips into a reduced fraction.
        Ok(QtRational::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> QtRational {
        QtRational {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exchange the roles of `q` and `t`.
    pub fn swap_qt(&self) -> QtRational {
        QtRational::normalized(self.num.swap_qt(), self.den.swap_qt())
    }

    /// Evaluate at integer `q`, `t` as a pair (numerator, denominator);
    /// the denominator may be zero when the specialisation is singular.
    pub fn eval(&self, q: &BigInt, t: &BigInt) -> (BigInt, BigInt) {
        (self.num.eval(q, t), self.den.eval(q, t))
    }

    /// Evaluate at integer `q`, `t`, requiring the result to be an integer.
    pub fn eval_exact(&self, q: &BigInt, t: &BigInt) -> Option<BigInt> {
        let (n, d) = self.eval(q, t);
        if d.is_zero() {
            return None;
        }
        let (quot, rem) = n.div_rem(&d);
        rem.is_zero().then_some(quot)
    }

    pub fn parse(s: &str) -> Result<QtRational, QtError> {
        parse::parse_rational(s)
    }
}

impl From<QtPoly> for QtRational {
    fn from(p: QtPoly) -> Self {
        QtRational {
            num: p,
            den: QtPoly::one(),
        }
    }
}

impl PartialEq for QtRational {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for QtRational {}

impl fmt::Display for QtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl std::str::FromStr for QtRational {
    type Err = QtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QtRational::parse(s)
    }
}

impl Add for &QtRational {
    type Output = QtRational;

    /// Addition keeping gcd work on denominator-sized inputs: with both
    /// operands fully reduced and `g = gcd(d1, d2)`, the sum over the
    /// least common denominator can only share factors with `g`.
    fn add(self, rhs: &QtRational) -> QtRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            // The sum may cancel partially into the shared denominator.
            return QtRational::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            // a + b/d = (a d + b)/d with gcd(a d + b, d) = gcd(b, d) = 1.
            return QtRational::reduced(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return rhs + self;
        }
        let g = super::gcd::poly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            // Coprime denominators: nothing can cancel beyond content.
            return QtRational::reduced(
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            );
        }
        let e1 = self.den.div_exact(&g).expect("gcd divides");
        let e2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &e2) + &(&rhs.num * &e1);
        let r = super::gcd::poly_gcd(&num, &g);
        let num = num.div_exact(&r).expect("gcd divides");
        let den = &(&e1 * &e2) * &g.div_exact(&r).expect("gcd divides");
        QtRational::reduced(num, den)
    }
}

impl Sub for &QtRational {
    type Output = QtRational;

    fn sub(self, rhs: &QtRational) -> QtRational {
        self + &(-rhs)
    }
}

impl Mul for &QtRational {
    type Output = QtRational;

    /// Multiplication with cross-cancellation before the products: for
    /// reduced operands, `gcd(a, d2)` and `gcd(b, d1)` are the only
    /// factors that can cancel.
    fn mul(self, rhs: &QtRational) -> QtRational {
        if self.is_zero() || rhs.is_zero() {
            return QtRational::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return (&self.num * &rhs.num).into();
        }
        let g1 = super::gcd::poly_gcd(&self.num, &rhs.den);
        let g2 = super::gcd::poly_gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let b = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        QtRational::reduced(&a * &b, &d1 * &d2)
    }
}

impl Neg for &QtRational {
    type Output = QtRational;

    fn neg(self) -> QtRational {
        QtRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl AddAssign<&QtRational> for QtRational {
    fn add_assign(&mut self, rhs: &QtRational) {
        *self = &*self + rhs;
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QtRational {
            type Output = QtRational;
            fn $method(self, rhs: QtRational) -> QtRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QtRational> for QtRational {
            type Output = QtRational;
            fn $method(self, rhs: &QtRational) -> QtRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
