//! Alexander matrices, elementary ideals, the Alexander polynomial, and
//! membership in the characteristic varieties `V_d` at torsion points.
//!
//! The Alexander matrix is the `r x g` Fox Jacobian pushed into the Laurent
//! ring of the torsion-free abelianization. `E_d` is generated by its
//! `(g - d)`-minors. For a character `chi != 1` of `Z^b1` the presentation
//! complex has `dim H^1 = g - 1 - rank A(chi)`, and that number is at least
//! `d` exactly when every generator of `E_d` vanishes at `chi`. Both routes
//! are exposed so they can be checked against each other.

use std::collections::HashMap;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{gcd_all, sample_characters, Character, CyclotomicField, LaurentPoly};
use crate::linalg;
use crate::presentation::{abelianization, fox_derivative, Abelianization, Presentation};

/// Default bound on the number of minors enumerated for one ideal.
pub const DEFAULT_MINOR_CAP: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    entries: Vec<Vec<LaurentPoly>>,
    num_generators: usize,
    abelianization: Abelianization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementaryIdeal {
    pub d: usize,
    /// Nonzero minors; empty means the zero ideal.
    pub generators: Vec<LaurentPoly>,
    /// Set when enumeration stopped at the minor cap.
    pub truncated: bool,
}

impl ElementaryIdeal {
    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.is_constant() && g.integer_content().is_one())
    }

    /// True when every generator vanishes at `chi`.
    pub fn vanishes_at(&self, chi: &Character) -> Result<bool> {
        for g in &self.generators {
            if !g.evaluate(chi)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl AlexanderMatrix {
    pub fn new(p: &Presentation) -> Result<Self> {
        let ab = abelianization(p)?;
        let g = p.num_generators();
        let entries = p
            .relators()
            .iter()
            .map(|r| (0..g).map(|j| fox_derivative(r, j, &ab)).collect())
            .collect::<Result<_>>()?;
        Ok(AlexanderMatrix {
            entries,
            num_generators: g,
            abelianization: ab,
        })
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    pub fn num_rows(&self) -> usize {
        self.entries.len()
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    /// Number of Laurent variables, the first Betti number.
    pub fn num_vars(&self) -> usize {
        self.abelianization.b1
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.abelianization
    }

    /// `A * (t^{ab(x_j)} - 1)_j`, which is zero for relator rows.
    pub fn fox_identity_residuals(&self) -> Vec<LaurentPoly> {
        let col: Vec<LaurentPoly> = (0..self.num_generators)
            .map(|j| self.abelianization.generator_minus_one(j))
            .collect();
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&col)
                    .fold(LaurentPoly::zero(self.num_vars()), |acc, (a, c)| {
                        &acc + &(a * c)
                    })
            })
            .collect()
    }

    pub fn elementary_ideal(&self, d: usize) -> ElementaryIdeal {
        self.elementary_ideal_capped(d, DEFAULT_MINOR_CAP)
    }

    pub fn elementary_ideal_capped(&self, d: usize, cap: usize) -> ElementaryIdeal {
        let n = self.num_vars();
        let g = self.num_generators;
        if d >= g {
            return ElementaryIdeal {
                d,
                generators: vec![LaurentPoly::one(n)],
                truncated: false,
            };
        }
        let k = g - d;
        let r = self.num_rows();
        if r < k {
            return ElementaryIdeal {
                d,
                generators: vec![],
                truncated: false,
            };
        }
        let mut minors = Minors {
            m: &self.entries,
            memo: HashMap::new(),
            num_vars: n,
        };
        let mut gens = vec![];
        let mut count = 0usize;
        let mut truncated = false;
        'outer: for rows in subsets(r, k) {
            for cols in subsets(g, k) {
                if count == cap {
                    truncated = true;
                    break 'outer;
                }
                count += 1;
                let det = minors.det(mask(&rows), mask(&cols));
                if !det.is_zero() && !gens.contains(&det) {
                    gens.push(det);
                }
            }
        }
        ElementaryIdeal {
            d,
            generators: gens,
            truncated,
        }
    }

    /// Gcd of the first elementary ideal, normalized; 0 for the zero ideal.
    pub fn alexander_polynomial(&self) -> Result<LaurentPoly> {
        let e1 = self.elementary_ideal(1);
        if e1.is_zero_ideal() {
            return Ok(LaurentPoly::zero(self.num_vars()));
        }
        gcd_all(&e1.generators)
    }

    /// Rank of `A(chi)` over `Q(zeta_m)`.
    pub fn rank_at(&self, chi: &Character) -> Result<usize> {
        if chi.exponents.len() != self.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars(),
                found: chi.exponents.len(),
            });
        }
        CyclotomicField::new(chi.order)?;
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(chi)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(linalg::rank(&rows))
    }

    /// `dim H^1` of the presentation complex with coefficients twisted by
    /// `chi != 1`: `g - 1 - rank A(chi)`.
    pub fn twisted_h1_dim(&self, chi: &Character) -> Result<usize> {
        if chi.order == 0 {
            return Err(Error::ZeroOrder);
        }
        if chi.is_identity() {
            return Err(Error::IdentityCharacter);
        }
        let rank = self.rank_at(chi)?;
        (self.num_generators - 1)
            .checked_sub(rank)
            .ok_or_else(|| Error::invariant("rank of A(chi) exceeds g - 1"))
    }

    /// Membership of `chi != 1` in `V_d`, decided by the rank formula.
    pub fn in_vd(&self, chi: &Character, d: usize) -> Result<bool> {
        Ok(self.twisted_h1_dim(chi)? >= d)
    }

    /// Samples non-identity torsion characters and checks that `chi` lies in
    /// `V(E_1)` exactly when `Delta(chi) = 0`. This is a sampled consequence
    /// of almost-principality, not a proof of the ideal inclusion.
    pub fn almost_principal_sampled(
        &self,
        trials: usize,
        seed: u64,
    ) -> Result<AlmostPrincipalReport> {
        if self.num_vars() == 0 {
            return Err(Error::InvalidInput(
                "almost-principality needs b1 >= 1".into(),
            ));
        }
        let e1 = self.elementary_ideal(1);
        let delta = if e1.is_zero_ideal() {
            LaurentPoly::zero(self.num_vars())
        } else {
            gcd_all(&e1.generators)?
        };
        let mut counterexamples = vec![];
        for chi in sample_characters(self.num_vars(), trials, seed) {
            let ideal_side = e1.vanishes_at(&chi)?;
            let delta_side = delta.evaluate(&chi)?.is_zero();
            if ideal_side != delta_side {
                counterexamples.push(chi);
            }
        }
        Ok(AlmostPrincipalReport {
            trials,
            seed,
            truncated: e1.truncated,
            counterexamples,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlmostPrincipalReport {
    pub trials: usize,
    pub seed: u64,
    pub truncated: bool,
    pub counterexamples: Vec<Character>,
}

impl AlmostPrincipalReport {
    pub fn consistent(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn alexander_matrix(p: &Presentation) -> Result<AlexanderMatrix> {
    AlexanderMatrix::new(p)
}

pub fn twisted_h1_dim(p: &Presentation, chi: &Character) -> Result<usize> {
    AlexanderMatrix::new(p)?.twisted_h1_dim(chi)
}

pub fn in_vd(p: &Presentation, chi: &Character, d: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    AlexanderMatrix::new(p)?.in_vd(chi, d)
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

/// All increasing `k`-subsets of `0..n`, lexicographically.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

/// Laplace expansion along the first row with memoised sub-minors.
struct Minors<'a> {
    m: &'a [Vec<LaurentPoly>],
    memo: HashMap<(u64, u64), LaurentPoly>,
    num_vars: usize,
}

impl Minors<'_> {
    fn det(&mut self, rows: u64, cols: u64) -> LaurentPoly {
        if rows == 0 {
            return LaurentPoly::one(self.num_vars);
        }
        if let Some(v) = self.memo.get(&(rows, cols)) {
            return v.clone();
        }
        let r0 = rows.trailing_zeros() as usize;
        let rest = rows & !(1 << r0);
        let mut acc = LaurentPoly::zero(self.num_vars);
        let mut sign_neg = false;
        let mut c = cols;
        while c != 0 {
            let j = c.trailing_zeros() as usize;
            c &= !(1 << j);
            let a = &self.m[r0][j];
            if !a.is_zero() {
                let sub = self.det(rest, cols & !(1 << j));
                let term = a * &sub;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}
