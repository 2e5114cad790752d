use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::rational::QtRational;
use super::QtError;

/// A polynomial in `x_1 .. x_N` with `QtRational` coefficients, stored as a
/// dense-exponent-vector map. Monomial expansions of generating functions
/// and symmetric functions live here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, QtRational>,
}

impl XPoly {
    pub fn zero(nvars: usize) -> Self {
        XPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        XPoly::constant(nvars, QtRational::one())
    }

    pub fn constant(nvars: usize, c: QtRational) -> Self {
        let mut p = XPoly::zero(nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    /// The variable `x_i`, `1 <= i <= nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        let mut p = XPoly::zero(nvars);
        p.add_term(exps, &QtRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &QtRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u8]) -> QtRational {
        self.terms.get(exps).cloned().unwrap_or_else(QtRational::zero)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u8>, c: &QtRational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn checked_add(&self, rhs: &XPoly) -> Result<XPoly, QtError> {
        if self.nvars != rhs.nvars {
            return Err(QtError::MismatchedVars(self.nvars, rhs.nvars));
        }
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &XPoly) -> Result<XPoly, QtError> {
        self.checked_add(&rhs.scalar_mul(&(-&QtRational::one())))
    }

    pub fn checked_mul(&self, rhs: &XPoly) -> Result<XPoly, QtError> {
        self.checked_mul_bounded(rhs, usize::MAX)
    }

    /// Product, dropping every term whose total degree exceeds `bound`.
    pub fn checked_mul_bounded(&self, rhs: &XPoly, bound: usize) -> Result<XPoly, QtError> {
        if self.nvars != rhs.nvars {
            return Err(QtError::MismatchedVars(self.nvars, rhs.nvars));
        }
        let mut out = XPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if exps.iter().map(|&x| x as usize).sum::<usize>() > bound {
                    continue;
                }
                out.add_term(exps, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &QtRational) -> XPoly {
        if c.is_zero() {
            return XPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v * c))
            .collect();
        XPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Set `x_i = 1` (`i` is 1-based); the variable count is unchanged.
    pub fn substitute_one(&self, i: usize) -> XPoly {
        assert!(i >= 1 && i <= self.nvars);
        let mut out = XPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            exps[i - 1] = 0;
            out.add_term(exps, c);
        }
        out
    }

    /// Drop the last variable; every term must have exponent zero there.
    pub fn project_drop_last(&self) -> Result<XPoly, QtError> {
        assert!(self.nvars >= 1);
        let mut out = XPoly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            if e[self.nvars - 1] != 0 {
                return Err(QtError::VariableInUse(self.nvars));
            }
            out.add_term(e[..self.nvars - 1].to_vec(), c);
        }
        Ok(out)
    }

    /// Value at `x_1 = ... = x_N = 1` (a q,t scalar).
    pub fn eval_all_ones(&self) -> QtRational {
        let mut acc = QtRational::zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    /// Value at `x_i = 1, q = t = 1`; `None` when a coefficient is singular there.
    pub fn count_at_ones(&self) -> Option<BigInt> {
        let one = BigInt::from(1);
        self.eval_all_ones().eval_exact(&one, &one)
    }

    fn render_mono(exps: &[u8]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            if e == 1 {
                parts.push(format!("x{}", i + 1));
            } else if e > 1 {
                parts.push(format!("x{}^{}", i + 1, e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Canonical order: total degree, then lexicographically by
        // exponent vector with earlier variables first (x1^2 before x1*x2).
        let mut keys: Vec<&Vec<u8>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: usize = a.iter().map(|&x| x as usize).sum();
            let db: usize = b.iter().map(|&x| x as usize).sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        for (i, e) in keys.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let c = &self.terms[*e];
            let mono = Self::render_mono(e);
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono)?;
            } else if c.denominator().is_one() && c.numerator().num_terms() == 1 {
                write!(f, "{}*{}", c, mono)?;
            } else {
                write!(f, "({})*{}", c, mono)?;
            }
        }
        Ok(())
    }
}
