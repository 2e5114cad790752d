//! q-analogues: [n]_q, [n]_q!, the Gaussian binomial, and the finite
//! q-Pochhammer symbol.

use super::poly::QtPoly;

/// `[n]_q = 1 + q + ... + q^{n-1}`, with `[0]_q = 0`.
pub fn q_analogue(n: u64) -> QtPoly {
    let mut p = QtPoly::zero();
    for i in 0..n {
        p += &QtPoly::monomial(i as u32, 0, 1);
    }
    p
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: u64) -> QtPoly {
    let mut p = QtPoly::one();
    for k in 1..=n {
        p = &p * &q_analogue(k);
    }
    p
}

/// The Gaussian binomial `[n choose k]_q = [n]_q! / ([k]_q! [n-k]_q!)`,
/// zero whenever `k < 0` or `k > n` (in particular for negative `n`).
pub fn q_binomial(n: i64, k: i64) -> QtPoly {
    if k < 0 || k > n {
        return QtPoly::zero();
    }
    let (n, k) = (n as u64, k as u64);
    let den = &q_factorial(k) * &q_factorial(n - k);
    q_factorial(n)
        .div_exact(&den)
        .expect("q-factorial quotient is a polynomial")
}

/// Coefficients of `(x;q)_n = (1-x)(1-xq)...(1-xq^{n-1})` as a polynomial
/// in the free symbol `x`: entry `s` is the coefficient of `x^s`.
pub fn q_pochhammer(n: u64) -> Vec<QtPoly> {
    let mut coeffs = vec![QtPoly::one()];
    for k in 0..n {
        let qk = QtPoly::monomial(k as u32, 0, 1);
        let mut next = vec![QtPoly::zero(); coeffs.len() + 1];
        for (s, c) in coeffs.iter().enumerate() {
            next[s] += c;
            let shifted = &qk * c;
            next[s + 1] = &next[s + 1] - &shifted;
        }
        coeffs = next;
    }
    coeffs
}
