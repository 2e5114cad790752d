//! Per-degree transition tables between the supported bases and the
//! monomial basis.
//!
//! Expansions into `m` are computed directly: `e_r = m_{1^r}`, `h_r` sums
//! every monomial, `p_r = m_r`, products are carried out on faithful
//! x-expansions, Schur functions count semistandard tableaux, and the
//! Macdonald column comes from the fillings formula. The reverse
//! direction is a fraction-free linear solve against those columns,
//! performed once per (basis, degree) and cached for the process.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::linalg::solve_fraction_free;
use crate::qt::{QtPoly, QtRational, XPoly};

use super::macdonald;
use super::partition::Partition;
use super::symf::Basis;
use super::{SymError, DEGREE_BOUND};

pub(crate) struct BasisTables {
    basis: Basis,
    degree: usize,
    pub partitions: Vec<Partition>,
    /// `to_m[row][col]`: coefficient of `m_{partitions[row]}` in the
    /// expansion of basis element `partitions[col]`.
    to_m: Vec<Vec<QtRational>>,
    from_m: OnceLock<Result<Vec<Vec<QtRational>>, SymError>>,
}

impl BasisTables {
    /// Monomial coefficients of `sum v[col] * B_{partitions[col]}`.
    pub fn apply_to_m(&self, v: &[QtRational]) -> Vec<QtRational> {
        matvec(&self.to_m, v)
    }

    /// Basis-B coefficients of the function with monomial coefficients `v`.
    pub fn apply_from_m(&self, v: &[QtRational]) -> Result<Vec<QtRational>, SymError> {
        let inv = self
            .from_m
            .get_or_init(|| match self.basis {
                // Fraction-free elimination blows up on the dense
                // Macdonald columns from degree 5; the twisted-product
                // diagonalisation below is exact and cheap.
                Basis::Macdonald => macdonald_from_m(self.degree, &self.partitions, &self.to_m),
                _ => invert_transition(&self.to_m),
            })
            .as_ref()
            .map_err(Clone::clone)?;
        Ok(matvec(inv, v))
    }

    fn from_m_matrix(&self) -> Result<&Vec<Vec<QtRational>>, SymError> {
        self.apply_from_m(&vec![QtRational::zero(); self.partitions.len()])?;
        self.from_m
            .get()
            .expect("initialised above")
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Inverse Macdonald transition via the twisted scalar product
/// `<f, g>_* = <f, omega g[XM]>`, under which the Macdonald basis is
/// orthogonal: the coefficient of the basis element of `mu` in `F` is
/// `<F, G_mu>_* / <Htilde_mu, G_mu>_*` with `G_mu = omega Htilde_mu[XM]`.
/// Orthogonality of the pairing is asserted during the build.
fn macdonald_from_m(
    degree: usize,
    partitions: &[Partition],
    to_m: &[Vec<QtRational>],
) -> Result<Vec<Vec<QtRational>>, SymError> {
    let n = partitions.len();
    let power = basis_tables(Basis::Power, degree)?;
    // Macdonald columns in power coordinates.
    let mut h_in_p: Vec<Vec<QtRational>> = Vec::with_capacity(n);
    for col in 0..n {
        let m_vec: Vec<QtRational> = (0..n).map(|row| to_m[row][col].clone()).collect();
        h_in_p.push(power.apply_from_m(&m_vec)?);
    }
    // Per power index rho: z_rho and the [XM]-with-omega twist
    // (-1)^{n - len} * prod_i (1 - q^{rho_i})(1 - t^{rho_i}).
    let z: Vec<QtRational> = partitions
        .iter()
        .map(|p| QtRational::from_int(p.z()))
        .collect();
    let twist: Vec<QtRational> = partitions
        .iter()
        .map(|rho| {
            let mut acc = QtPoly::constant(if (rho.size() - rho.len()) % 2 == 0 {
                1
            } else {
                -1
            });
            for &part in rho.parts() {
                let j = part as u32;
                acc = &acc * &(&QtPoly::one() - &QtPoly::monomial(j, 0, 1));
                acc = &acc * &(&QtPoly::one() - &QtPoly::monomial(0, j, 1));
            }
            QtRational::from(acc)
        })
        .collect();
    let g: Vec<Vec<QtRational>> = h_in_p
        .iter()
        .map(|col| {
            col.iter()
                .enumerate()
                .map(|(rho, c)| c * &twist[rho])
                .collect()
        })
        .collect();
    let pair = |a: &[QtRational], b: &[QtRational]| {
        let mut acc = QtRational::zero();
        for rho in 0..n {
            if a[rho].is_zero() || b[rho].is_zero() {
                continue;
            }
            acc += &(&(&a[rho] * &b[rho]) * &z[rho]);
        }
        acc
    };
    let mut norms = Vec::with_capacity(n);
    for (mu, g_mu) in g.iter().enumerate() {
        for lambda in 0..n {
            let p = pair(&h_in_p[lambda], g_mu);
            if lambda == mu {
                if p.is_zero() {
                    return Err(SymError::Integrity(format!(
                        "twisted norm of Macdonald element {} vanished",
                        partitions[mu]
                    )));
                }
                norms.push(p);
            } else if !p.is_zero() {
                return Err(SymError::Integrity(format!(
                    "Macdonald elements {} and {} are not orthogonal",
                    partitions[lambda], partitions[mu]
                )));
            }
        }
    }
    // from_m[mu][j] = (1/norm_mu) * sum_rho z_rho G_mu[rho] * M2P[rho][j].
    let m2p = power.from_m_matrix()?;
    let mut out = vec![vec![QtRational::zero(); n]; n];
    for mu in 0..n {
        let scale = norms[mu].inverse().expect("norm is nonzero");
        for j in 0..n {
            let mut acc = QtRational::zero();
            for rho in 0..n {
                if g[mu][rho].is_zero() || m2p[rho][j].is_zero() {
                    continue;
                }
                acc += &(&(&g[mu][rho] * &m2p[rho][j]) * &z[rho]);
            }
            out[mu][j] = &acc * &scale;
        }
    }
    Ok(out)
}

fn matvec(m: &[Vec<QtRational>], v: &[QtRational]) -> Vec<QtRational> {
    let n = m.len();
    let mut out = vec![QtRational::zero(); n];
    for (row, slot) in out.iter_mut().enumerate() {
        for (col, value) in v.iter().enumerate() {
            if value.is_zero() || m[row][col].is_zero() {
                continue;
            }
            *slot += &(&m[row][col] * value);
        }
    }
    out
}

fn invert_transition(to_m: &[Vec<QtRational>]) -> Result<Vec<Vec<QtRational>>, SymError> {
    let n = to_m.len();
    // Transition entries are polynomials for every supported basis.
    let matrix: Vec<Vec<QtPoly>> = to_m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    c.clone()
                        .into_poly()
                        .expect("transition coefficients are polynomial")
                })
                .collect()
        })
        .collect();
    let identity: Vec<Vec<QtPoly>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i == j {
                        QtPoly::one()
                    } else {
                        QtPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    let cols = solve_fraction_free(&matrix, &identity)
        .map_err(|_| SymError::Integrity("singular basis transition".into()))?;
    // cols[j] is the j-th column of the inverse; transpose to row-major.
    Ok((0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect())
}

static TABLES: OnceLock<Mutex<HashMap<(Basis, usize), Arc<BasisTables>>>> = OnceLock::new();

pub(crate) fn basis_tables(basis: Basis, degree: usize) -> Result<Arc<BasisTables>, SymError> {
    if degree > DEGREE_BOUND {
        return Err(SymError::DegreeBound {
            degree,
            bound: DEGREE_BOUND,
        });
    }
    let cache = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    if let Some(t) = map.get(&(basis, degree)) {
        return Ok(Arc::clone(t));
    }
    let t = Arc::new(build_tables(basis, degree));
    map.insert((basis, degree), Arc::clone(&t));
    Ok(t)
}

fn build_tables(basis: Basis, degree: usize) -> BasisTables {
    let partitions = Partition::all(degree);
    let index: HashMap<&Partition, usize> = partitions.iter().zip(0..).collect();
    let n = partitions.len();
    let mut to_m = vec![vec![QtRational::zero(); n]; n];
    for (col, lambda) in partitions.iter().enumerate() {
        let expansion = match basis {
            Basis::Monomial => BTreeMap::from([(lambda.clone(), QtRational::one())]),
            Basis::Power => multiplicative_expansion(lambda, p_atom),
            Basis::Elementary => multiplicative_expansion(lambda, e_atom),
            Basis::Homogeneous => multiplicative_expansion(lambda, h_atom),
            Basis::Schur => schur_in_monomial(lambda),
            Basis::Macdonald => macdonald::htilde_in_monomial(lambda),
        };
        for (mu, c) in expansion {
            to_m[index[&mu]][col] = c;
        }
    }
    BasisTables {
        basis,
        degree,
        partitions,
        to_m,
        from_m: OnceLock::new(),
    }
}

/// `m_r` is `p_r` itself.
fn p_atom(r: u8) -> BTreeMap<Partition, QtRational> {
    BTreeMap::from([(Partition::single(r), QtRational::one())])
}

/// `e_r = m_{1^r}`.
fn e_atom(r: u8) -> BTreeMap<Partition, QtRational> {
    BTreeMap::from([(
        Partition::from_unsorted(vec![1; r as usize]),
        QtRational::one(),
    )])
}

/// `h_r` is the sum of all monomials of degree `r`.
fn h_atom(r: u8) -> BTreeMap<Partition, QtRational> {
    Partition::all(r as usize)
        .into_iter()
        .map(|p| (p, QtRational::one()))
        .collect()
}

/// Expand `B_lambda = prod_i B_{lambda_i}` given the atom expansions.
fn multiplicative_expansion(
    lambda: &Partition,
    atom: fn(u8) -> BTreeMap<Partition, QtRational>,
) -> BTreeMap<Partition, QtRational> {
    let mut acc = BTreeMap::from([(Partition::empty(), QtRational::one())]);
    for &part in lambda.parts() {
        acc = mul_monomial_maps(&acc, &atom(part));
    }
    acc
}

/// Multiply two monomial-basis functions via faithful x-expansions.
fn mul_monomial_maps(
    a: &BTreeMap<Partition, QtRational>,
    b: &BTreeMap<Partition, QtRational>,
) -> BTreeMap<Partition, QtRational> {
    let da = a.keys().map(Partition::size).max().unwrap_or(0);
    let db = b.keys().map(Partition::size).max().unwrap_or(0);
    let nvars = da + db;
    let xa = partition_map_to_xpoly(a, nvars);
    let xb = partition_map_to_xpoly(b, nvars);
    let prod = xa.checked_mul(&xb).expect("same nvars");
    mono_to_partition_map(&prod)
}

/// `sum c_lambda m_lambda` expanded into `x_1..x_nvars`.
pub(crate) fn partition_map_to_xpoly(
    coeffs: &BTreeMap<Partition, QtRational>,
    nvars: usize,
) -> XPoly {
    let mut out = XPoly::zero(nvars);
    for (p, c) in coeffs {
        debug_assert!(p.len() <= nvars);
        let mut exps = vec![0u8; nvars];
        exps[..p.len()].copy_from_slice(p.parts());
        // Distinct rearrangements of the padded exponent vector.
        exps.sort_unstable();
        loop {
            out.add_term(exps.clone(), c);
            if !next_permutation(&mut exps) {
                break;
            }
        }
    }
    out
}

/// Read off `m_lambda` coefficients from a symmetric x-polynomial: the
/// coefficient of `m_lambda` is the coefficient of the sorted monomial.
pub(crate) fn mono_to_partition_map(xp: &XPoly) -> BTreeMap<Partition, QtRational> {
    let mut out = BTreeMap::new();
    for (exps, c) in xp.terms() {
        if exps.windows(2).all(|w| w[0] >= w[1]) {
            out.insert(Partition::from_unsorted(exps.clone()), c.clone());
        }
    }
    out
}

/// Standard next-lexicographic-permutation; yields each distinct
/// rearrangement of a multiset exactly once.
fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `s_lambda = sum_mu K_{lambda mu} m_mu` with Kostka numbers counted by
/// direct semistandard-tableau enumeration: rows weakly increase, columns
/// strictly increase, content `mu`.
fn schur_in_monomial(lambda: &Partition) -> BTreeMap<Partition, QtRational> {
    let n = lambda.size();
    let mut out = BTreeMap::new();
    for mu in Partition::all(n) {
        let k = kostka(lambda, &mu);
        if k > 0 {
            out.insert(mu, QtRational::from_int(BigInt::from(k)));
        }
    }
    out
}

pub(crate) fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    // Remaining copies of each value 1..=len(mu).
    let mut content: Vec<usize> = mu.parts().iter().map(|&p| p as usize).collect();
    let rows: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    // Row-major fill; tableau[j][i] strictly increases down column i and
    // weakly increases along row j.
    let mut tableau: Vec<Vec<usize>> = rows.iter().map(|&r| vec![0; r]).collect();
    fn fill(
        rows: &[usize],
        tableau: &mut Vec<Vec<usize>>,
        content: &mut Vec<usize>,
        j: usize,
        i: usize,
    ) -> u64 {
        if j == rows.len() {
            return 1;
        }
        let (nj, ni) = if i + 1 < rows[j] { (j, i + 1) } else { (j + 1, 0) };
        let min_left = if i > 0 { tableau[j][i - 1] } else { 1 };
        let min_above = if j > 0 { tableau[j - 1][i] + 1 } else { 1 };
        let lo = min_left.max(min_above);
        let mut count = 0;
        for v in lo..=content.len() {
            if content[v - 1] == 0 {
                continue;
            }
            content[v - 1] -= 1;
            tableau[j][i] = v;
            count += fill(rows, tableau, content, nj, ni);
            content[v - 1] += 1;
        }
        count
    }
    if rows.is_empty() {
        return 1;
    }
    fill(&rows, &mut tableau, &mut content, 0, 0)
}
