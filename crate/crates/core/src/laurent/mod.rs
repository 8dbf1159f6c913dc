//! Multivariate Laurent polynomials with integer coefficients.
//!
//! Elements of `Z[t1^±1, ..., tn^±1]` are stored sparsely as a map from
//! exponent vectors to nonzero coefficients. Because the map is ordered
//! lexicographically and never holds zero coefficients, structural
//! equality is ring equality.
//!
//! Units of the ring are the signed monomials `±t^a`. Alexander-type
//! invariants are only defined up to units, so [`LaurentPoly::normalize_unit`]
//! fixes one representative per associate class: every variable has minimal
//! exponent zero and the lexicographically largest term has a positive
//! coefficient.

mod cyclotomic;
mod gcd;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use cyclotomic::{
    cyclotomic_polynomial, euler_phi, sample_characters, Character, CyclotomicElement,
    CyclotomicField, SAMPLE_ORDERS,
};
pub use gcd::{gcd, gcd_all};

pub type Exponents = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero(num_vars: usize) -> Self {
        LaurentPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, 1)
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; num_vars], c)
    }

    /// `c * t^exps`; the number of variables is `exps.len()`.
    pub fn monomial(exps: Exponents, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `t_{index+1}` in a ring with `num_vars` variables.
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < num_vars, "variable index out of range");
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Self::monomial(e, 1)
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms<I, C>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: e.len(),
                });
            }
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: BigInt) {
        debug_assert_eq!(exps.len(), self.num_vars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&a| a == 0))
    }

    /// True for polynomials without any non-constant monomial (including 0).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&a| a == 0))
    }

    /// Coefficient of `t^exps`, zero if absent.
    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// The lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn min_exponents(&self) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let mut m = it.next()?.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        Some(m)
    }

    pub fn max_exponents(&self) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let mut m = it.next()?.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).max(*b);
            }
        }
        Some(m)
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VariableCountMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the unit `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.num_vars);
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, s)| a + s).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.num_vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `t_i -> t_i^{-1}` in every variable.
    pub fn invert_variables(&self) -> Self {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|a| -a).collect(), c.clone()))
                .collect(),
        }
    }

    /// Gcd of the integer coefficients (nonnegative; zero for the zero polynomial).
    pub fn integer_content(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Canonical associate: minimal exponent zero in every variable and a
    /// positive coefficient on the lexicographically largest term.
    ///
    /// Idempotent and constant on associate classes; maps 0 to 0.
    pub fn normalize_unit(&self) -> Self {
        let Some(min) = self.min_exponents() else {
            return self.clone();
        };
        let neg: Exponents = min.iter().map(|a| -a).collect();
        let shifted = self.shift(&neg);
        let negative = shifted
            .leading_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if negative {
            -shifted
        } else {
            shifted
        }
    }

    /// True if `self` and `other` differ by a unit `±t^a`.
    pub fn is_associate(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.normalize_unit() == other.normalize_unit()
    }

    /// Exact image under `t_i -> zeta_m^{e_i}`.
    pub fn evaluate(&self, chi: &Character) -> Result<CyclotomicElement> {
        cyclotomic::evaluate(self, chi)
    }

    pub fn parse(text: &str, num_vars: usize) -> Result<Self> {
        parse::parse_poly(text, num_vars)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::write_poly(self, f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.num_vars, self)
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    /// Parses with the number of variables inferred from the largest
    /// variable index present (`t` alone means one variable).
    fn from_str(s: &str) -> Result<Self> {
        let n = parse::infer_num_vars(s)?;
        parse::parse_poly(s, n)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

// Operator forms panic on a variable-count mismatch; use the `checked_*`
// methods when the operands are not known to agree.
impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let a = p("1 - t2", 2);
        let b = p("t2 - 1", 2);
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let a = p("t1 - 1", 1);
        let b = p("t1 + 1", 1);
        assert_eq!(&a * &b, p("t^2 - 1", 1));
    }

    #[test]
    fn unit_cancellation() {
        let a = p("t1^-1", 2);
        let b = p("t1", 2);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::VariableCountMismatch { left: 1, right: 2 })
        ));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn normalize_examples() {
        // -t1^-1 t2 (t1 - 1) = -t2 + t1^-1 t2
        let x = p("-t1^-1*t2", 2) * p("t1 - 1", 2);
        assert_eq!(x.normalize_unit(), p("t1 - 1", 2));
        let y = p("t^2 - t + 1", 1);
        assert_eq!(y.normalize_unit(), y);
        assert!(LaurentPoly::zero(3).normalize_unit().is_zero());
    }

    #[test]
    fn normalize_is_idempotent() {
        let x = p("-3*t1^-2*t2 + 5*t1^4 - t2^-7", 2);
        let n = x.normalize_unit();
        assert_eq!(n.normalize_unit(), n);
        assert!(n.is_associate(&x));
        assert_eq!(n.min_exponents().unwrap(), vec![0, 0]);
    }

    #[test]
    fn content() {
        assert_eq!(p("4*t - 6", 1).integer_content(), BigInt::from(2));
        assert_eq!(LaurentPoly::zero(1).integer_content(), BigInt::zero());
    }
}
