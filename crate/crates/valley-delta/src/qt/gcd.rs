//! Bivariate polynomial gcd over Z, by a two-level primitive polynomial
//! remainder sequence: Z[q,t] viewed as Z[t][q], with Z[t] gcds handled
//! the same way one level down. Fraction normalisation uses this to keep
//! numerators and denominators reduced; without it, chained field
//! operations explode at degree 4 and beyond.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::{QtMono, QtPoly};

// --- univariate layer: dense Z[t] ------------------------------------

type Uni = Vec<BigInt>;

fn uni_trim(p: &mut Uni) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn uni_is_zero(p: &Uni) -> bool {
    p.is_empty()
}

fn uni_content(p: &Uni) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

fn uni_scale_down(p: &Uni, g: &BigInt) -> Uni {
    p.iter()
        .map(|c| {
            let (q, r) = c.div_rem(g);
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

fn uni_mul_scalar(p: &Uni, s: &BigInt) -> Uni {
    p.iter().map(|c| c * s).collect()
}

fn uni_mul(a: &Uni, b: &Uni) -> Uni {
    if uni_is_zero(a) || uni_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    uni_trim(&mut out);
    out
}

fn uni_sub(a: &Uni, b: &Uni) -> Uni {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    uni_trim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn uni_prem(a: &Uni, b: &Uni) -> Uni {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while !uni_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r := lb * r - lr * t^{dr-db} * b
        r = uni_mul_scalar(&r, &lb);
        let mut shifted = vec![BigInt::zero(); dr - db];
        shifted.extend(uni_mul_scalar(b, &lr));
        r = uni_sub(&r, &shifted);
        debug_assert!(r.len() < dr + 1 || uni_is_zero(&r));
    }
    r
}

fn uni_primitive(p: &Uni) -> Uni {
    if uni_is_zero(p) {
        return Vec::new();
    }
    let mut g = uni_content(p);
    if p.last().unwrap().is_negative() {
        g = -g;
    }
    uni_scale_down(p, &g)
}

fn uni_abs(p: &Uni) -> Uni {
    match p.last() {
        Some(c) if c.is_negative() => p.iter().map(|c| -c).collect(),
        _ => p.clone(),
    }
}

fn uni_gcd(a: &Uni, b: &Uni) -> Uni {
    if uni_is_zero(a) {
        return uni_abs(b);
    }
    if uni_is_zero(b) {
        return uni_abs(a);
    }
    let ca = uni_content(a);
    let cb = uni_content(b);
    let c = ca.gcd(&cb);
    let mut x = uni_primitive(a);
    let mut y = uni_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !uni_is_zero(&y) {
        let r = uni_prem(&x, &y);
        x = y;
        y = uni_primitive(&r);
    }
    uni_mul_scalar(&uni_primitive(&x), &c)
}

// --- bivariate layer: Z[t][q] -----------------------------------------

type Biv = Vec<Uni>;

fn biv_trim(p: &mut Biv) {
    while p.last().is_some_and(|c| uni_is_zero(c)) {
        p.pop();
    }
}

fn biv_is_zero(p: &Biv) -> bool {
    p.is_empty()
}

fn biv_content(p: &Biv) -> Uni {
    let mut g: Uni = Vec::new();
    for c in p {
        if !uni_is_zero(c) {
            g = uni_gcd(&g, c);
        }
    }
    g
}

fn biv_primitive(p: &Biv) -> Biv {
    if biv_is_zero(p) {
        return Vec::new();
    }
    let content = biv_content(p);
    p.iter()
        .map(|c| {
            if uni_is_zero(c) {
                Vec::new()
            } else {
                uni_div_exact(c, &content)
            }
        })
        .collect()
}

/// Exact division in Z[t] (panics if inexact — callers divide by divisors).
fn uni_div_exact(a: &Uni, b: &Uni) -> Uni {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db)];
    while !uni_is_zero(&r) {
        let dr = r.len() - 1;
        assert!(dr >= db, "inexact univariate division");
        let (c, rem) = r.last().unwrap().div_rem(lb);
        assert!(rem.is_zero(), "inexact univariate division");
        q[dr - db] = c.clone();
        let mut shifted = vec![BigInt::zero(); dr - db];
        shifted.extend(uni_mul_scalar(b, &c));
        r = uni_sub(&r, &shifted);
    }
    uni_trim(&mut q);
    q
}

fn biv_prem(a: &Biv, b: &Biv) -> Biv {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while !biv_is_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r := lb*r - lr*q^{dr-db}*b
        let mut next: Biv = r.iter().map(|c| uni_mul(c, &lb)).collect();
        for (i, c) in b.iter().enumerate() {
            let idx = dr - db + i;
            next[idx] = uni_sub(&next[idx], &uni_mul(c, &lr));
        }
        biv_trim(&mut next);
        r = next;
        debug_assert!(biv_is_zero(&r) || r.len() - 1 < dr);
    }
    r
}

fn biv_gcd(a: &Biv, b: &Biv) -> Biv {
    if biv_is_zero(a) {
        return b.clone();
    }
    if biv_is_zero(b) {
        return a.clone();
    }
    let ca = biv_content(a);
    let cb = biv_content(b);
    let c = uni_gcd(&ca, &cb);
    let mut x = biv_primitive(a);
    let mut y = biv_primitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !biv_is_zero(&y) {
        let r = biv_prem(&x, &y);
        x = y;
        y = biv_primitive(&r);
    }
    let x = biv_primitive(&x);
    x.iter().map(|coef| uni_mul(coef, &c)).collect()
}

// --- QtPoly interface ---------------------------------------------------

fn to_biv(p: &QtPoly) -> Biv {
    let dq = p.terms().map(|(m, _)| m.q).max().unwrap_or(0) as usize;
    let mut out: Biv = vec![Vec::new(); dq + 1];
    for (m, c) in p.terms() {
        let coef = &mut out[m.q as usize];
        if coef.len() <= m.t as usize {
            coef.resize(m.t as usize + 1, BigInt::zero());
        }
        coef[m.t as usize] = c.clone();
    }
    for coef in &mut out {
        uni_trim(coef);
    }
    let mut out = out;
    biv_trim(&mut out);
    out
}

fn from_biv(p: &Biv) -> QtPoly {
    let mut out = QtPoly::zero();
    for (qe, coef) in p.iter().enumerate() {
        for (te, c) in coef.iter().enumerate() {
            out.add_term(QtMono::new(qe as u32, te as u32), c);
        }
    }
    out
}

/// gcd of two q,t-polynomials over Z, sign-normalised so the result's
/// leading canonical coefficient is positive. `gcd(0, b) = ±b`.
pub(crate) fn poly_gcd(a: &QtPoly, b: &QtPoly) -> QtPoly {
    if a.is_zero() {
        return abs_normalise(b.clone());
    }
    if b.is_zero() {
        return abs_normalise(a.clone());
    }
    if a.is_one() || b.is_one() {
        return QtPoly::one();
    }
    abs_normalise(from_biv(&biv_gcd(&to_biv(a), &to_biv(b))))
}

// Sign convention matches fraction denominators: first canonical term
// positive.
fn abs_normalise(p: QtPoly) -> QtPoly {
    match p.lowest() {
        Some((_, c)) if c.is_negative() => -&p,
        _ => p,
    }
}
