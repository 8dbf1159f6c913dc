//! Exact arithmetic in `Q(zeta_m) = Q[x] / Phi_m(x)` and finite-order
//! characters of the torus.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::LaurentPoly;
use crate::error::{Error, Result};

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree
/// first. Computed as `(x^m - 1) / prod_{d | m, d < m} Phi_d`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m > 0);
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m % d == 0) {
        num = div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut r = num.to_vec();
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd];
        q[k] = c;
        for (i, &b) in den.iter().enumerate() {
            r[k + i] -= c * b;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0));
    q
}

/// The field `Q(zeta_m)`; cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    modulus: Arc<Vec<i64>>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(CyclotomicField {
            order,
            modulus: Arc::new(cyclotomic_polynomial(order)),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> CyclotomicElement {
        CyclotomicElement {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn from_integer(&self, c: impl Into<BigInt>) -> CyclotomicElement {
        let mut z = self.zero();
        z.coeffs[0] = BigRational::from_integer(c.into());
        z
    }

    pub fn one(&self) -> CyclotomicElement {
        self.from_integer(1)
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicElement {
        let m = self.order as i64;
        let mut v = vec![BigRational::zero(); self.order as usize];
        v[k.rem_euclid(m) as usize] = BigRational::one();
        self.reduce(v)
    }

    /// Reduces a dense coefficient vector (lowest degree first) modulo `Phi_m`.
    fn reduce(&self, mut v: Vec<BigRational>) -> CyclotomicElement {
        let d = self.degree();
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c.is_zero() {
                continue;
            }
            // x^k = x^{k-d} * x^d and x^d = -sum_{i<d} modulus[i] x^i
            for i in 0..d {
                let m = self.modulus[i];
                if m != 0 {
                    v[k - d + i] -= &c * BigRational::from_integer(m.into());
                }
            }
        }
        v.resize(d, BigRational::zero());
        CyclotomicElement {
            field: self.clone(),
            coeffs: v,
        }
    }
}

/// A residue class in `Q[x] / Phi_m`, stored by its `phi(m)` rational
/// coefficients (lowest degree first).
#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    field: CyclotomicField,
    coeffs: Vec<BigRational>,
}

impl CyclotomicElement {
    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the element is the rational number `c`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "cyclotomic orders differ"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        CyclotomicElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_field(other);
        CyclotomicElement {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let d = self.coeffs.len();
        let mut v = vec![BigRational::zero(); 2 * d.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        self.field.reduce(v)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    /// Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        // Invariant: s * self == r (mod Phi).
        let mut r0: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Phi_m is irreducible.
        let c = r1[0].clone();
        let mut v: Vec<BigRational> = s1.into_iter().map(|a| a / &c).collect();
        if v.is_empty() {
            v.push(BigRational::zero());
        }
        self.field.reduce(v)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lb = b.last().expect("division by zero polynomial").clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (i, y) in b.iter().enumerate() {
            r[k + i] -= &c * y;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

impl crate::linalg::Field for CyclotomicElement {
    fn is_zero(&self) -> bool {
        CyclotomicElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CyclotomicElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CyclotomicElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CyclotomicElement::mul(self, o)
    }
    fn inv(&self) -> Self {
        CyclotomicElement::inv(self)
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.field.order)?;
                    } else {
                        write!(f, "z{}^{k}", self.field.order)?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.field.order, self)
    }
}

/// A finite-order character of `Z^n`: `t_i -> zeta_m^{exponents[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    pub order: u32,
    pub exponents: Vec<i64>,
}

impl Character {
    pub fn new(order: u32, exponents: Vec<i64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Character { order, exponents })
    }

    pub fn identity(num_vars: usize) -> Self {
        Character {
            order: 1,
            exponents: vec![0; num_vars],
        }
    }

    pub fn is_identity(&self) -> bool {
        let m = self.order as i64;
        m != 0 && self.exponents.iter().all(|e| e.rem_euclid(m) == 0)
    }

    /// Parses `m:e1,e2,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let (m, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(0, "expected 'order:e1,e2,...'"))?;
        let order: u32 = m
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, "bad character order"))?;
        let mut exponents = vec![];
        let mut offset = m.len() + 1;
        for part in rest.split(',') {
            if !part.trim().is_empty() {
                exponents.push(
                    part.trim()
                        .parse()
                        .map_err(|_| Error::parse(offset, "bad character exponent"))?,
                );
            }
            offset += part.len() + 1;
        }
        Character::new(order, exponents)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        write!(f, "{}:{}", self.order, e.join(","))
    }
}

pub(super) fn evaluate(p: &LaurentPoly, chi: &Character) -> Result<CyclotomicElement> {
    if chi.order == 0 {
        return Err(Error::ZeroOrder);
    }
    if chi.exponents.len() != p.num_vars() {
        return Err(Error::DimensionMismatch {
            expected: p.num_vars(),
            found: chi.exponents.len(),
        });
    }
    let field = CyclotomicField::new(chi.order)?;
    let m = chi.order as i64;
    let mut v = vec![BigRational::zero(); chi.order as usize];
    for (e, c) in p.terms() {
        let k = e
            .iter()
            .zip(&chi.exponents)
            .fold(0i64, |acc, (a, b)| (acc + (a % m) * (b % m)).rem_euclid(m));
        v[k as usize] += BigRational::from_integer(c.clone());
    }
    Ok(field.reduce(v))
}

/// Character orders used for random sampling.
pub const SAMPLE_ORDERS: [u32; 7] = [2, 3, 4, 5, 6, 8, 12];

/// `count` non-identity characters of `Z^num_vars`, reproducible from `seed`.
/// Orders are drawn from [`SAMPLE_ORDERS`] and exponents uniformly.
pub fn sample_characters(num_vars: usize, count: usize, seed: u64) -> Vec<Character> {
    if num_vars == 0 {
        return vec![];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let order = SAMPLE_ORDERS[rng.gen_range(0..SAMPLE_ORDERS.len())];
        let exponents = (0..num_vars)
            .map(|_| rng.gen_range(0..order as i64))
            .collect();
        let chi = Character { order, exponents };
        if !chi.is_identity() {
            out.push(chi);
        }
    }
    out
}
