//! Multivariate gcd in the Laurent ring.
//!
//! Inputs are first moved into the polynomial subring by clearing monomial
//! factors. The polynomial gcd then recurses on the highest variable in use:
//! contents with respect to that variable (polynomials in fewer variables)
//! are handled recursively, primitive parts by a primitive pseudo-remainder
//! sequence. Integer content falls out of the base case.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// Gcd of two Laurent polynomials, normalized with
/// [`LaurentPoly::normalize_unit`].
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    gcd_all(&[a.clone(), b.clone()])
}

/// Normalized gcd of a nonempty list. All-zero input yields 0.
pub fn gcd_all(ps: &[LaurentPoly]) -> Result<LaurentPoly> {
    let Some(first) = ps.first() else {
        return Err(Error::InvalidInput("gcd of an empty list".into()));
    };
    let n = first.num_vars();
    if let Some(bad) = ps.iter().find(|p| p.num_vars() != n) {
        return Err(Error::VariableCountMismatch {
            left: n,
            right: bad.num_vars(),
        });
    }
    let mut acc = LaurentPoly::zero(n);
    for p in ps {
        if p.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, &p.normalize_unit());
        if acc.is_constant() && acc.coeff(&vec![0; n]) == BigInt::from(1) {
            break;
        }
    }
    Ok(acc.normalize_unit())
}

fn degree_in(p: &LaurentPoly, v: usize) -> i64 {
    p.terms().map(|(e, _)| e[v]).max().unwrap_or(0)
}

fn highest_var(p: &LaurentPoly) -> Option<usize> {
    (0..p.num_vars())
        .rev()
        .find(|&v| p.terms().any(|(e, _)| e[v] != 0))
}

/// Coefficients with respect to `v`; the `v` exponent is zeroed in each.
fn coefficients_in(p: &LaurentPoly, v: usize) -> BTreeMap<i64, LaurentPoly> {
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        e2[v] = 0;
        out.entry(e[v])
            .or_insert_with(|| LaurentPoly::zero(p.num_vars()))
            .add_term(e2, c.clone());
    }
    out
}

fn leading_coeff_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    coefficients_in(p, v)
        .into_iter()
        .next_back()
        .map(|(_, c)| c)
        .unwrap_or_else(|| LaurentPoly::zero(p.num_vars()))
}

fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(p.num_vars());
    for c in coefficients_in(p, v).values() {
        acc = poly_gcd(&acc, c);
    }
    acc
}

/// Exact quotient `p / d` in the polynomial ring (nonnegative exponents),
/// or `None` when `d` does not divide `p`.
pub(crate) fn exact_div(p: &LaurentPoly, d: &LaurentPoly) -> Option<LaurentPoly> {
    let (dl_e, dl_c) = d.leading_term()?;
    let (dl_e, dl_c) = (dl_e.clone(), dl_c.clone());
    let mut r = p.clone();
    let mut q = LaurentPoly::zero(p.num_vars());
    while let Some((re, rc)) = r.leading_term() {
        let e: Vec<i64> = re.iter().zip(&dl_e).map(|(a, b)| a - b).collect();
        if e.iter().any(|&a| a < 0) {
            return None;
        }
        let (c, rem) = rc.div_rem(&dl_c);
        if !rem.is_zero() {
            return None;
        }
        let t = LaurentPoly::monomial(e, c);
        r = &r - &(&t * d);
        q = &q + &t;
    }
    Some(q)
}

/// `lc(b)^k * a mod b` with respect to `v`, for the smallest suitable `k`.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = degree_in(b, v);
    let lb = leading_coeff_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, v) >= db {
        let dr = degree_in(&r, v);
        let lr = leading_coeff_in(&r, v);
        let mut shift = vec![0; a.num_vars()];
        shift[v] = dr - db;
        r = &(&lb * &r) - &(&lr * &b.shift(&shift));
    }
    r
}

fn positive(p: LaurentPoly) -> LaurentPoly {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -p,
        _ => p,
    }
}

fn primitive_part(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let c = content_in(p, v);
    exact_div(p, &c).expect("content divides")
}

/// Gcd in `Z[t1..tn]`, leading coefficient positive. Inputs must have
/// nonnegative exponents.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let n = a.num_vars();
    let v = match (highest_var(a), highest_var(b)) {
        (None, None) => {
            let z = vec![0; n];
            return LaurentPoly::constant(n, a.coeff(&z).gcd(&b.coeff(&z)));
        }
        (x, y) => x.max(y).unwrap(),
    };
    if degree_in(a, v) == 0 {
        return poly_gcd(a, &content_in(b, v));
    }
    if degree_in(b, v) == 0 {
        return poly_gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let content = poly_gcd(&ca, &cb);
    let mut f = exact_div(a, &ca).expect("content divides");
    let mut g = exact_div(b, &cb).expect("content divides");
    if degree_in(&f, v) < degree_in(&g, v) {
        std::mem::swap(&mut f, &mut g);
    }
    let prim = loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break g;
        }
        if degree_in(&r, v) == 0 {
            break LaurentPoly::one(n);
        }
        f = g;
        g = primitive_part(&r, v);
    };
    positive(&content * &primitive_part(&prim, v))
}
