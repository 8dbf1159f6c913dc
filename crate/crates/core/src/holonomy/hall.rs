//! Classical Hall basis of the free Lie algebra and its image in the tensor
//! algebra.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A Hall element: a generator or the bracket of two earlier elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HallNode {
    Letter(usize),
    Bracket(usize, usize),
}

/// Hall set on `n` letters up to degree `max_degree`, in Hall order
/// (by degree, then by construction order).
#[derive(Clone, Debug)]
pub struct HallSet {
    pub n: usize,
    pub nodes: Vec<HallNode>,
    pub degree: Vec<usize>,
}

impl HallSet {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let mut h = HallSet {
            n,
            nodes: vec![],
            degree: vec![],
        };
        if max_degree == 0 {
            return h;
        }
        for i in 0..n {
            h.nodes.push(HallNode::Letter(i));
            h.degree.push(1);
        }
        for d in 2..=max_degree {
            let existing = h.nodes.len();
            for b in 0..existing {
                for a in 0..b {
                    if h.degree[a] + h.degree[b] != d {
                        continue;
                    }
                    // [a, b] with a < b; if b = [b1, b2] then b1 <= a
                    let ok = match h.nodes[b] {
                        HallNode::Letter(_) => true,
                        HallNode::Bracket(b1, _) => b1 <= a,
                    };
                    if ok {
                        h.nodes.push(HallNode::Bracket(a, b));
                        h.degree.push(d);
                    }
                }
            }
        }
        h
    }

    pub fn count_in_degree(&self, d: usize) -> usize {
        self.degree.iter().filter(|&&x| x == d).count()
    }

    /// Expansion of element `idx` as a noncommutative polynomial.
    pub fn tensor(&self, idx: usize) -> Tensor {
        match self.nodes[idx] {
            HallNode::Letter(i) => Tensor::letter(self.n, i),
            HallNode::Bracket(a, b) => self.tensor(a).bracket(&self.tensor(b)),
        }
    }
}

/// Homogeneous element of the tensor algebra on `n` letters; a word of
/// degree `d` is encoded as its base-`n` index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub n: usize,
    pub degree: usize,
    pub terms: BTreeMap<u64, BigRational>,
}

impl Tensor {
    pub fn zero(n: usize, degree: usize) -> Self {
        Tensor {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn letter(n: usize, i: usize) -> Self {
        let mut t = Tensor::zero(n, 1);
        t.terms.insert(i as u64, BigRational::one());
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_to(&mut self, key: u64, c: BigRational) {
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &BigRational) {
        debug_assert_eq!(self.degree, other.degree);
        for (k, v) in &other.terms {
            self.add_to(*k, v * c);
        }
    }

    /// `self * other - other * self`.
    pub fn bracket(&self, other: &Tensor) -> Tensor {
        let n = self.n as u64;
        let shift_other = n.pow(other.degree as u32);
        let shift_self = n.pow(self.degree as u32);
        let mut out = Tensor::zero(self.n, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                out.add_to(a * shift_other + b, xy.clone());
                out.add_to(b * shift_self + a, -xy);
            }
        }
        out
    }

    /// `[x_i, self]`.
    pub fn ad_letter(&self, i: usize) -> Tensor {
        Tensor::letter(self.n, i).bracket(self)
    }
}

/// Row-echelon basis of a subspace of one graded piece, keyed by pivot word.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<u64, Tensor>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Tensor> {
        self.rows.values()
    }

    /// Reduces `v` against the basis; returns whether it was independent.
    pub fn insert(&mut self, mut v: Tensor) -> bool {
        loop {
            let Some((&p, c)) = v.terms.iter().next() else {
                return false;
            };
            match self.rows.get(&p) {
                Some(row) => {
                    let c = -c.clone();
                    v.add_scaled(row, &c);
                }
                None => {
                    let inv = c.recip();
                    for x in v.terms.values_mut() {
                        *x *= &inv;
                    }
                    self.rows.insert(p, v);
                    return true;
                }
            }
        }
    }
}
