//! The `E_{n,k}` family, defined by expanding `e_n[X (1-z)/(1-q)]` in the
//! finite q-Pochhammer basis `(z;q)_k / (q;q)_k` of polynomials in `z`.

use crate::qt::{q_pochhammer, QtPoly, QtRational};

use super::symf::{Basis, SymF};
use super::{SymError, DEGREE_BOUND};

/// `E_{n,k}`, zero outside `0 <= k <= n`; `E_{0,0} = 1`.
pub fn e_nk(n: i64, k: i64) -> Result<SymF, SymError> {
    if k < 0 || k > n || n < 0 {
        return Ok(SymF::zero(Basis::Power));
    }
    let (n, k) = (n as usize, k as usize);
    if n > DEGREE_BOUND {
        return Err(SymError::DegreeBound {
            degree: n,
            bound: DEGREE_BOUND,
        });
    }

    // e_n[X(1-z)/(1-q)] on the power basis: p_j -> p_j (1-z^j)/(1-q^j).
    // Collect the z-polynomial G(z) = sum_s z^s G_s with G_s in Lambda.
    let en_p = SymF::e(n).convert(Basis::Power)?;
    let mut g: Vec<SymF> = (0..=n).map(|_| SymF::zero(Basis::Power)).collect();
    for (lambda, c) in en_p.coeffs() {
        // prod_i (1 - z^{lambda_i}) as integer z-coefficients.
        let mut zpoly = vec![1i64];
        for &part in lambda.parts() {
            let mut next = vec![0i64; zpoly.len() + part as usize];
            for (s, &v) in zpoly.iter().enumerate() {
                next[s] += v;
                next[s + part as usize] -= v;
            }
            zpoly = next;
        }
        // prod_i (1 - q^{lambda_i}) in the denominator.
        let mut den = QtPoly::one();
        for &part in lambda.parts() {
            den = &den * &(&QtPoly::one() - &QtPoly::monomial(part as u32, 0, 1));
        }
        let base = c.checked_div(&den.into()).expect("1 - q^j is nonzero");
        for (s, &v) in zpoly.iter().enumerate() {
            if v != 0 {
                g[s].add_term(lambda.clone(), &(&base * &QtRational::from_int(v)));
            }
        }
    }

    // Change of z-basis from {z^s} to {(z;q)_j/(q;q)_j}: the target basis
    // polynomial of index j has exact z-degree j, so solve by back
    // substitution from the top degree.
    let mut basis_polys: Vec<Vec<QtRational>> = Vec::with_capacity(n + 1);
    for j in 0..=n as u64 {
        let poch = q_pochhammer(j);
        let mut qq = QtPoly::one();
        for i in 1..=j {
            qq = &qq * &(&QtPoly::one() - &QtPoly::monomial(i as u32, 0, 1));
        }
        let qq: QtRational = qq.into();
        basis_polys.push(
            poch.into_iter()
                .map(|c| QtRational::from(c).checked_div(&qq).unwrap())
                .collect(),
        );
    }
    let mut residual = g;
    let mut components: Vec<SymF> = (0..=n).map(|_| SymF::zero(Basis::Power)).collect();
    for j in (0..=n).rev() {
        let lead = basis_polys[j][j]
            .inverse()
            .expect("pochhammer leading coefficient is nonzero");
        let e_j = residual[j].scalar_mul(&lead);
        for s in 0..=j {
            let adjust = e_j.scalar_mul(&basis_polys[j][s]);
            residual[s] = residual[s].sub(&adjust)?;
        }
        components[j] = e_j;
    }
    debug_assert!(residual.iter().all(SymF::is_zero));
    Ok(components.swap_remove(k))
}
