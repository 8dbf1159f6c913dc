//! Holonomy Lie algebra `h = Lie(H_1) / ideal(im d)`, where `d: H_2 -> H_1 ^ H_1`
//! is dual to the cup product.
//!
//! Relations live in `^2`-coordinates: entry `p` of a relation vector is the
//! coefficient of `e_i ^ e_j` for the `p`-th pair `i < j` in lexicographic
//! order, read as the bracket `[x_i, x_j]`.

mod hall;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::resonance::{Coefficient, ThreeForm};

pub use hall::{Echelon, HallNode, HallSet, Tensor};

pub const DEFAULT_DEGREE_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticData {
    n: usize,
    relations: Vec<Vec<BigRational>>,
}

/// Index of `e_i ^ e_j` (`i < j`) in the lexicographic pair order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl QuadraticData {
    pub fn new(n: usize, relations: Vec<Vec<BigRational>>) -> Result<Self> {
        let len = n * n.saturating_sub(1) / 2;
        if let Some(r) = relations.iter().find(|r| r.len() != len) {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: r.len(),
            });
        }
        Ok(QuadraticData { n, relations })
    }

    pub fn free(n: usize) -> Self {
        QuadraticData {
            n,
            relations: vec![],
        }
    }

    /// `[x_1, y_1] + ... + [x_g, y_g]` on generators `x_1, y_1, ..., x_g, y_g`.
    pub fn surface(g: usize) -> Self {
        let n = 2 * g;
        let mut r = vec![BigRational::zero(); n * n.saturating_sub(1) / 2];
        for i in 0..g {
            r[pair_index(n, 2 * i, 2 * i + 1)] = linalg::rational(1);
        }
        QuadraticData {
            n,
            relations: if g == 0 { vec![] } else { vec![r] },
        }
    }

    pub fn num_generators(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[Vec<BigRational>] {
        &self.relations
    }

    pub fn with_relation(mut self, r: Vec<BigRational>) -> Result<Self> {
        self.relations.push(r);
        QuadraticData::new(self.n, self.relations)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: QuadraticSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: 0,
            message: format!("line {} column {}: {e}", e.line(), e.column()),
        })?;
        spec.to_data()
    }
}

/// JSON form `{n, relations: [[{i, j, c}, ...], ...]}` with 1-based `i`, `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSpec {
    pub n: usize,
    pub relations: Vec<Vec<PairTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTerm {
    pub i: usize,
    pub j: usize,
    pub c: Coefficient,
}

impl QuadraticSpec {
    pub fn to_data(&self) -> Result<QuadraticData> {
        let n = self.n;
        let mut rels = vec![];
        for rel in &self.relations {
            let mut r = vec![BigRational::zero(); n * n.saturating_sub(1) / 2];
            for t in rel {
                if t.i == 0 || t.j == 0 || t.i > n || t.j > n {
                    return Err(Error::InvalidInput(format!(
                        "pair ({}, {}) outside 1..={n}",
                        t.i, t.j
                    )));
                }
                let (i, j, c) = match (t.i - 1, t.j - 1) {
                    (i, j) if i < j => (i, j, t.c.value()?),
                    (i, j) if i > j => (j, i, -t.c.value()?),
                    _ => continue,
                };
                r[pair_index(n, i, j)] += c;
            }
            rels.push(r);
        }
        QuadraticData::new(n, rels)
    }
}

/// `im(d)` from the cup form: for each `k`, the relation
/// `sum_{i<j} mu_ijk e_i ^ e_j`. These span the annihilator of the kernel of
/// `x ^ y -> eta(x, y, .)`, returned as a row-reduced basis.
pub fn holonomy_from_threeform(eta: &ThreeForm) -> QuadraticData {
    let n = eta.dim();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|k| pairs(n).map(|(i, j)| eta.get(i, j, k)).collect())
        .collect();
    linalg::row_reduce(&mut rows);
    QuadraticData { n, relations: rows }
}

/// Graded ranks `dim h_1, ..., dim h_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedRanks {
    pub ranks: Vec<usize>,
}

impl GradedRanks {
    /// Rank in degree `d >= 1`.
    pub fn degree(&self, d: usize) -> usize {
        self.ranks[d - 1]
    }
}

pub fn lie_ranks(q: &QuadraticData, up_to: usize) -> Result<GradedRanks> {
    lie_ranks_capped(q, up_to, DEFAULT_DEGREE_CAP)
}

/// Ranks via Hall-basis dimensions of the free Lie algebra minus the
/// dimension of the ideal, whose degree-`d` piece is spanned by `[x_i, v]`
/// with `v` in the degree-`(d-1)` piece.
pub fn lie_ranks_capped(q: &QuadraticData, up_to: usize, cap: usize) -> Result<GradedRanks> {
    if up_to == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if up_to > cap {
        return Err(Error::DegreeCap {
            requested: up_to,
            cap,
        });
    }
    let n = q.n;
    let hall = HallSet::new(n, up_to);
    let mut ranks = vec![n];
    let mut ideal = Echelon::new();
    if up_to >= 2 {
        for r in &q.relations {
            let mut t = Tensor::zero(n, 2);
            for ((i, j), c) in pairs(n).zip(r) {
                if !c.is_zero() {
                    t.add_scaled(&Tensor::letter(n, i).bracket(&Tensor::letter(n, j)), c);
                }
            }
            ideal.insert(t);
        }
        ranks.push(hall.count_in_degree(2) - ideal.dim());
    }
    for d in 3..=up_to {
        let mut next = Echelon::new();
        for v in ideal.basis() {
            for i in 0..n {
                next.insert(v.ad_letter(i));
            }
        }
        ranks.push(hall.count_in_degree(d) - next.dim());
        ideal = next;
    }
    Ok(GradedRanks { ranks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witt(n: usize, d: usize) -> usize {
        fn mobius(mut m: usize) -> i64 {
            let mut r = 1;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    m /= p;
                    if m % p == 0 {
                        return 0;
                    }
                    r = -r;
                }
                p += 1;
            }
            if m > 1 {
                r = -r;
            }
            r
        }
        let s: i64 = (1..=d)
            .filter(|e| d % e == 0)
            .map(|e| mobius(d / e) * (n as i64).pow(e as u32))
            .sum();
        (s / d as i64) as usize
    }

    #[test]
    fn pair_indexing() {
        let n = 5;
        for (p, (i, j)) in pairs(n).enumerate() {
            assert_eq!(pair_index(n, i, j), p);
        }
    }

    #[test]
    fn free_ranks_match_witt() {
        let r = lie_ranks(&QuadraticData::free(2), 5).unwrap();
        assert_eq!(r.ranks, vec![2, 1, 2, 3, 6]);
        for n in 2..=3 {
            let r = lie_ranks(&QuadraticData::free(n), 6).unwrap();
            let w: Vec<_> = (1..=6).map(|d| witt(n, d)).collect();
            assert_eq!(r.ranks, w);
        }
    }

    #[test]
    fn z2_and_surfaces() {
        let z2 = QuadraticData::surface(1);
        assert_eq!(z2.relations()[0], vec![linalg::rational(1)]);
        assert_eq!(lie_ranks(&z2, 4).unwrap().ranks, vec![2, 0, 0, 0]);
        assert_eq!(
            lie_ranks(&QuadraticData::surface(2), 2).unwrap().degree(2),
            5
        );
    }

    #[test]
    fn degree_cap() {
        assert_eq!(
            lie_ranks(&QuadraticData::free(2), 7),
            Err(Error::DegreeCap {
                requested: 7,
                cap: 6
            })
        );
        assert!(lie_ranks(&QuadraticData::free(2), 0).is_err());
        assert_eq!(
            lie_ranks_capped(&QuadraticData::free(2), 7, 8)
                .unwrap()
                .degree(7),
            18
        );
    }

    #[test]
    fn from_threeform() {
        assert!(holonomy_from_threeform(&ThreeForm::zero(2))
            .relations()
            .is_empty());
        // S^1 x Sigma_2: the only relation supported on surface directions is
        // [x1, y1] + [x2, y2]
        let q = holonomy_from_threeform(&ThreeForm::product_form(2, 5));
        assert_eq!(q.relations().len(), 5);
        let surface: Vec<_> = q
            .relations()
            .iter()
            .filter(|r| {
                pairs(5)
                    .zip(r.iter())
                    .all(|((i, j), c)| c.is_zero() || j < 4 && i < 4)
            })
            .collect();
        assert_eq!(surface.len(), 1);
        let mut expect = vec![BigRational::zero(); 10];
        expect[pair_index(5, 0, 1)] = linalg::rational(1);
        expect[pair_index(5, 2, 3)] = linalg::rational(1);
        assert_eq!(surface[0], &expect);
        // Z x surface: degree-2 rank is 10 - 5
        assert_eq!(lie_ranks(&q, 2).unwrap().ranks, vec![5, 5]);
    }

    #[test]
    fn json_input() {
        let q = QuadraticData::from_json(
            r#"{"n": 4, "relations": [[{"i": 1, "j": 2, "c": 1}, {"i": 4, "j": 3, "c": -1}]]}"#,
        )
        .unwrap();
        assert_eq!(q, QuadraticData::surface(2));
        assert!(
            QuadraticData::from_json(r#"{"n": 2, "relations": [[{"i": 1, "j": 3, "c": 1}]]}"#)
                .is_err()
        );
    }
}
