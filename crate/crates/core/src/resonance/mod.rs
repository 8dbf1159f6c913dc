//! Triple cup-product forms of closed orientable 3-manifolds.
//!
//! A [`ThreeForm`] `eta` on `Q^n` stands for `mu(x, y, z) = <x u y u z, [M]>`.
//! Poincaré duality identifies a cup product `x u y` in `H^2` with the
//! functional `eta(x, y, .)`, so every question about `u: H^1 x H^1 -> H^2`
//! is answered from `eta` alone.

mod classify;
mod isotropy;
mod pfaffian;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rational};

pub use classify::{
    classify_malcev, classify_malcev_with, corank_of_class, Classification, ClassifyStep,
    MalcevClass,
};
pub use isotropy::{isotropy_lower_bound, IsotropyBound, IsotropySearch};
pub use pfaffian::{
    is_generic, is_generic_with, r1_is_full, r1_is_full_with, R1Config, R1Mode, R1Report,
};

pub type Vector = Vec<BigRational>;
pub type Matrix = Vec<Vec<BigRational>>;

/// Alternating 3-form, stored by its coefficients on increasing triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeForm {
    n: usize,
    coeffs: BTreeMap<[usize; 3], BigRational>,
}

/// Sign of the permutation sorting three distinct indices, with the sorted
/// triple; `None` on a repeated index.
fn sort_triple(i: usize, j: usize, k: usize) -> Option<(bool, [usize; 3])> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut t = [i, j, k];
    let mut neg = false;
    for a in 0..3 {
        for b in 0..2 - a {
            if t[b] > t[b + 1] {
                t.swap(b, b + 1);
                neg = !neg;
            }
        }
    }
    Some((neg, t))
}

impl ThreeForm {
    pub fn zero(n: usize) -> Self {
        ThreeForm {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Adds `c * e_i ^ e_j ^ e_k` (0-based indices, any order).
    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: BigRational) -> Result<()> {
        for &x in &[i, j, k] {
            if x >= self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    found: x + 1,
                });
            }
        }
        let Some((neg, t)) = sort_triple(i, j, k) else {
            return Ok(());
        };
        let c = if neg { -c } else { c };
        let e = self.coeffs.entry(t).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&t);
        }
        Ok(())
    }

    pub fn with_term(mut self, i: usize, j: usize, k: usize, c: i64) -> Self {
        self.add_term(i, j, k, rational(c)).expect("index in range");
        self
    }

    /// `mu_ijk` for any index order; zero on repeated indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> BigRational {
        match sort_triple(i, j, k) {
            None => BigRational::zero(),
            Some((neg, t)) => {
                let c = self.coeffs.get(&t).cloned().unwrap_or_default();
                if neg {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients on increasing triples.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize; 3], &BigRational)> {
        self.coeffs.iter()
    }

    /// `e_1 ^ e_2 ^ e_3` in `Q^n` (requires `n >= 3`).
    pub fn volume(n: usize) -> Self {
        ThreeForm::zero(n).with_term(0, 1, 2, 1)
    }

    /// `(e_1 ^ e_2 + ... + e_{2g-1} ^ e_{2g}) ^ e_{2g+1}` in `Q^n`,
    /// `n >= 2g + 1`; the cup form of `S^1 x Sigma_g` padded with zeros.
    pub fn product_form(g: usize, n: usize) -> Self {
        assert!(n > 2 * g, "product form needs n >= 2g + 1");
        (0..g).fold(ThreeForm::zero(n), |f, i| {
            f.with_term(2 * i, 2 * i + 1, 2 * g, 1)
        })
    }

    /// The same coefficients viewed in `Q^n` for a larger `n`.
    pub fn padded(&self, n: usize) -> Self {
        assert!(n >= self.n);
        ThreeForm {
            n,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Trilinear evaluation `eta(x, y, z)`.
    pub fn eval(&self, x: &[BigRational], y: &[BigRational], z: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for ([i, j, k], c) in &self.coeffs {
            let (i, j, k) = (*i, *j, *k);
            let det = &x[i] * (&y[j] * &z[k] - &y[k] * &z[j])
                - &x[j] * (&y[i] * &z[k] - &y[k] * &z[i])
                + &x[k] * (&y[i] * &z[j] - &y[j] * &z[i]);
            if !det.is_zero() {
                acc += c * det;
            }
        }
        acc
    }

    /// `eta(x, y, .)` as a covector.
    pub fn cup(&self, x: &[BigRational], y: &[BigRational]) -> Vector {
        let mut v = vec![BigRational::zero(); self.n];
        for ([i, j, k], c) in &self.coeffs {
            let (i, j, k) = (*i, *j, *k);
            // coefficient of z_k, z_j, z_i in the expansion
            v[k] += c * (&x[i] * &y[j] - &x[j] * &y[i]);
            v[j] -= c * (&x[i] * &y[k] - &x[k] * &y[i]);
            v[i] += c * (&x[j] * &y[k] - &x[k] * &y[j]);
        }
        v
    }

    /// Pullback along `T`: `(T* eta)(u, v, w) = eta(Tu, Tv, Tw)`.
    pub fn pullback(&self, t: &Matrix) -> Result<Self> {
        if t.len() != self.n || t.iter().any(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: t.len(),
            });
        }
        let col = |a: usize| -> Vector { t.iter().map(|r| r[a].clone()).collect() };
        let cols: Vec<Vector> = (0..self.n).map(col).collect();
        let mut out = ThreeForm::zero(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                let ab = self.cup(&cols[a], &cols[b]);
                for c in b + 1..self.n {
                    let v: BigRational = ab.iter().zip(&cols[c]).map(|(x, y)| x * y).sum();
                    if !v.is_zero() {
                        out.coeffs.insert([a, b, c], v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Integer multiple of the form with the same zero pattern of every
    /// contraction (denominators cleared).
    pub fn integral_multiple(&self) -> BTreeMap<[usize; 3], BigInt> {
        use num_integer::Integer;
        let l = self
            .coeffs
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coeffs
            .iter()
            .map(|(t, c)| (*t, (c * BigRational::from_integer(l.clone())).to_integer()))
            .collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ThreeFormSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: 0,
            message: format!("line {} column {}: {e}", e.line(), e.column()),
        })?;
        spec.to_form()
    }

    pub fn to_spec(&self) -> ThreeFormSpec {
        ThreeFormSpec {
            n: self.n,
            terms: self
                .coeffs
                .iter()
                .map(|([i, j, k], c)| TermSpec {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    c: Coefficient::Text(c.to_string()),
                })
                .collect(),
        }
    }
}

/// JSON form `{n, terms: [{i, j, k, c}]}` with 1-based indices; `c` is an
/// integer or a string such as `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeFormSpec {
    pub n: usize,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Coefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

impl Coefficient {
    pub fn value(&self) -> Result<BigRational> {
        match self {
            Coefficient::Int(c) => Ok(rational(*c)),
            Coefficient::Text(s) => s
                .trim()
                .parse::<BigRational>()
                .map_err(|_| Error::InvalidInput(format!("bad rational coefficient {s:?}"))),
        }
    }
}

impl ThreeFormSpec {
    pub fn to_form(&self) -> Result<ThreeForm> {
        let mut f = ThreeForm::zero(self.n);
        for t in &self.terms {
            if [t.i, t.j, t.k].iter().any(|&x| x == 0 || x > self.n) {
                return Err(Error::InvalidInput(format!(
                    "term ({}, {}, {}) has an index outside 1..={}",
                    t.i, t.j, t.k, self.n
                )));
            }
            f.add_term(t.i - 1, t.j - 1, t.k - 1, t.c.value()?)?;
        }
        Ok(f)
    }
}

/// `A(x)_ij = sum_k mu_ijk x_k`; skew-symmetric with `A(x) x = 0`.
pub fn contraction_matrix(eta: &ThreeForm, x: &[BigRational]) -> Result<Matrix> {
    let n = eta.n;
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let mut a = vec![vec![BigRational::zero(); n]; n];
    for ([i, j, k], c) in &eta.coeffs {
        let (i, j, k) = (*i, *j, *k);
        // mu_ijk x_k into (i,j), mu_jki x_i into (j,k), mu_kij x_j into (k,i)
        for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
            if !x[r].is_zero() {
                let v = c * &x[r];
                a[p][q] += &v;
                a[q][p] -= v;
            }
        }
    }
    Ok(a)
}

/// Membership of a nonzero `x` in `R_1`: `rank A(x) <= n - 2`.
///
/// The zero vector is rejected; by convention `0` lies in `R_1` whenever
/// `n >= 1`, see [`zero_in_r1`].
pub fn in_r1(eta: &ThreeForm, x: &[BigRational]) -> Result<bool> {
    if x.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let a = contraction_matrix(eta, x)?;
    Ok(linalg::rank(&a) + 2 <= eta.n)
}

/// Convention for the zero vector: `0` is in `R_1` iff `n >= 1`.
pub fn zero_in_r1(eta: &ThreeForm) -> bool {
    eta.n >= 1
}

/// A subspace of `Q^n` given by a linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn new(ambient_dim: usize, basis: Vec<Vector>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        if linalg::rank(&basis) != basis.len() {
            return Err(Error::InvalidInput(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// Span of the coordinate vectors `e_i`, `i` in `indices` (0-based).
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let basis = indices.iter().map(|&i| unit(ambient_dim, i)).collect();
        Subspace::new(ambient_dim, basis)
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::coordinate(ambient_dim, &(0..ambient_dim).collect::<Vec<_>>()).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        linalg::rank(&rows) == self.basis.len()
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![BigRational::zero(); n];
    v[i] = BigRational::one();
    v
}

/// Dimension of the span of `eta(w_a, w_b, .)` over basis pairs `a < b`: the
/// rank of the cup product restricted to `W ^ W`.
pub fn restriction_rank(eta: &ThreeForm, w: &Subspace) -> Result<usize> {
    if w.ambient_dim != eta.n {
        return Err(Error::DimensionMismatch {
            expected: eta.n,
            found: w.ambient_dim,
        });
    }
    let b = &w.basis;
    let mut rows = vec![];
    for a in 0..b.len() {
        for c in a + 1..b.len() {
            rows.push(eta.cup(&b[a], &b[c]));
        }
    }
    Ok(linalg::rank(&rows))
}

pub fn is_isotropic(eta: &ThreeForm, w: &Subspace) -> Result<bool> {
    Ok(restriction_rank(eta, w)? == 0)
}
