use std::collections::BTreeMap;
use std::fmt;

use crate::qt::{QtRational, XPoly};

use super::classical::{basis_tables, mono_to_partition_map, partition_map_to_xpoly};
use super::partition::Partition;
use super::{SymError, DEGREE_BOUND};

/// The supported bases.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Basis {
    Power,
    Monomial,
    Elementary,
    Homogeneous,
    Schur,
    /// Modified Macdonald basis.
    Macdonald,
}

impl Basis {
    pub fn letter(&self) -> &'static str {
        match self {
            Basis::Power => "p",
            Basis::Monomial => "m",
            Basis::Elementary => "e",
            Basis::Homogeneous => "h",
            Basis::Schur => "s",
            Basis::Macdonald => "H",
        }
    }

    pub fn all() -> [Basis; 6] {
        [
            Basis::Power,
            Basis::Monomial,
            Basis::Elementary,
            Basis::Homogeneous,
            Basis::Schur,
            Basis::Macdonald,
        ]
    }
}

/// A symmetric function of bounded degree: a basis tag plus a finite
/// partition-indexed coefficient map over Q(q,t). Conversions between
/// bases are exact; round-trips are identities.
#[derive(Clone, Debug)]
pub struct SymF {
    basis: Basis,
    coeffs: BTreeMap<Partition, QtRational>,
}

impl SymF {
    pub fn zero(basis: Basis) -> Self {
        SymF {
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant 1 (empty-partition basis element — same in every basis).
    pub fn one(basis: Basis) -> Self {
        SymF::term(basis, Partition::empty(), QtRational::one())
    }

    pub fn term(basis: Basis, index: Partition, coeff: QtRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(index, coeff);
        }
        SymF { basis, coeffs }
    }

    /// `e_n`.
    pub fn e(n: usize) -> Self {
        SymF::term(
            Basis::Elementary,
            Partition::single(n as u8),
            QtRational::one(),
        )
    }

    /// `h_n`.
    pub fn h(n: usize) -> Self {
        SymF::term(
            Basis::Homogeneous,
            Partition::single(n as u8),
            QtRational::one(),
        )
    }

    /// `p_n`.
    pub fn p(n: usize) -> Self {
        SymF::term(Basis::Power, Partition::single(n as u8), QtRational::one())
    }

    pub fn m(index: Partition) -> Self {
        SymF::term(Basis::Monomial, index, QtRational::one())
    }

    pub fn s(index: Partition) -> Self {
        SymF::term(Basis::Schur, index, QtRational::one())
    }

    /// The modified Macdonald basis element for `index`.
    pub fn htilde(index: Partition) -> Self {
        SymF::term(Basis::Macdonald, index, QtRational::one())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, QtRational> {
        &self.coeffs
    }

    pub fn coeff(&self, index: &Partition) -> QtRational {
        self.coeffs
            .get(index)
            .cloned()
            .unwrap_or_else(QtRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest partition size in the support.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Partition::size).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut sizes = self.coeffs.keys().map(Partition::size);
        match sizes.next() {
            None => true,
            Some(first) => sizes.all(|s| s == first),
        }
    }

    /// The degree-`d` homogeneous component.
    pub fn homogeneous_component(&self, d: usize) -> SymF {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(p, _)| p.size() == d)
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        SymF {
            basis: self.basis,
            coeffs,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.coeffs.keys().map(Partition::size).collect();
        ds.dedup();
        ds
    }

    pub fn add_term(&mut self, index: Partition, coeff: &QtRational) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(index) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Sum; the right-hand side is converted into this basis first.
    pub fn add(&self, rhs: &SymF) -> Result<SymF, SymError> {
        let rhs = rhs.convert(self.basis)?;
        let mut out = self.clone();
        for (p, c) in &rhs.coeffs {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &SymF) -> Result<SymF, SymError> {
        self.add(&rhs.scalar_mul(&(-&QtRational::one())))
    }

    pub fn scalar_mul(&self, c: &QtRational) -> SymF {
        if c.is_zero() {
            return SymF::zero(self.basis);
        }
        SymF {
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, v)| (p.clone(), v * c))
                .collect(),
        }
    }

    /// Product, computed in the power basis where `p_lam * p_mu` is the
    /// multiset union; returned in this function's basis.
    pub fn mul(&self, rhs: &SymF) -> Result<SymF, SymError> {
        let d = self.degree() + rhs.degree();
        if d > DEGREE_BOUND {
            return Err(SymError::DegreeBound {
                degree: d,
                bound: DEGREE_BOUND,
            });
        }
        let a = self.convert(Basis::Power)?;
        let b = rhs.convert(Basis::Power)?;
        let mut out = SymF::zero(Basis::Power);
        for (pa, ca) in &a.coeffs {
            for (pb, cb) in &b.coeffs {
                out.add_term(pa.union(pb), &(ca * cb));
            }
        }
        out.convert(self.basis)
    }

    /// Exact change of basis.
    pub fn convert(&self, target: Basis) -> Result<SymF, SymError> {
        if self.basis == target {
            return Ok(self.clone());
        }
        let mut out = SymF::zero(target);
        for d in self.degrees_set() {
            let tables_src = basis_tables(self.basis, d)?;
            // Coefficient vector in the source basis.
            let vec: Vec<QtRational> = tables_src
                .partitions
                .iter()
                .map(|p| self.coeff(p))
                .collect();
            // Into the monomial basis: m = to_m * vec.
            let in_m = tables_src.apply_to_m(&vec);
            let m_vec = if target == Basis::Monomial {
                in_m
            } else {
                basis_tables(target, d)?.apply_from_m(&in_m)?
            };
            let index = if target == Basis::Monomial {
                &tables_src.partitions
            } else {
                &basis_tables(target, d)?.partitions
            };
            for (p, c) in index.iter().zip(m_vec) {
                out.add_term(p.clone(), &c);
            }
        }
        Ok(out)
    }

    fn degrees_set(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.coeffs.keys().map(Partition::size).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Monomial expansion in `x_1..x_nvars`; faithful only when
    /// `nvars >= degree`, so fewer variables are an error.
    pub fn to_xpoly(&self, nvars: usize) -> Result<XPoly, SymError> {
        let d = self.degree();
        if nvars < d {
            return Err(SymError::TooFewVariables { nvars, degree: d });
        }
        let in_m = self.convert(Basis::Monomial)?;
        Ok(partition_map_to_xpoly(&in_m.coeffs, nvars))
    }

    /// Read a symmetric polynomial back as a monomial-basis function.
    /// Verifies symmetry by re-expanding; the degree must not exceed the
    /// variable count.
    pub fn from_xpoly(xp: &XPoly) -> Result<SymF, SymError> {
        let d = xp.total_degree();
        if xp.nvars() < d {
            return Err(SymError::TooFewVariables {
                nvars: xp.nvars(),
                degree: d,
            });
        }
        let coeffs = mono_to_partition_map(xp);
        let out = SymF {
            basis: Basis::Monomial,
            coeffs,
        };
        let back = partition_map_to_xpoly(&out.coeffs, xp.nvars());
        if &back != xp {
            return Err(SymError::NotSymmetric);
        }
        Ok(out)
    }
}

impl PartialEq for SymF {
    /// Equality as symmetric functions (converts to a common basis).
    fn eq(&self, other: &Self) -> bool {
        match other.convert(self.basis) {
            Ok(rhs) => self.coeffs == rhs.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for SymF {}

impl fmt::Display for SymF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if p.is_empty() {
                write!(f, "({})", c)?;
                continue;
            }
            let elem = format!("{}{}", self.basis.letter(), p);
            if c.is_one() {
                write!(f, "{elem}")?;
            } else if c.denominator().is_one() && c.numerator().num_terms() == 1 {
                write!(f, "{}*{}", c, elem)?;
            } else {
                write!(f, "({})*{}", c, elem)?;
            }
        }
        Ok(())
    }
}
