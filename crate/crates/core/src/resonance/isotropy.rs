use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_isotropic, unit, Matrix, Subspace, ThreeForm, Vector};
use crate::linalg::{self, rational};

/// Budget for [`isotropy_lower_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsotropySearch {
    /// Nodes visited by the coordinate-subset search, per basis.
    pub max_subsets: usize,
    /// Vectors with entries in `{-1, 0, 1}` scanned as greedy starting points.
    pub max_seeds: usize,
    /// Random unimodular basis changes tried after the standard basis.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for IsotropySearch {
    fn default() -> Self {
        IsotropySearch {
            max_subsets: 100_000,
            max_seeds: 4096,
            restarts: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyBound {
    pub dim: usize,
    pub witness: Subspace,
    /// The coordinate search in the standard basis ran to completion.
    pub coordinate_search_complete: bool,
}

/// Largest isotropic subspace found by coordinate-subset search, exact greedy
/// extension and seeded basis changes. This is a lower bound for the
/// isotropy index; the witness is verified before returning.
pub fn isotropy_lower_bound(eta: &ThreeForm, search: &IsotropySearch) -> IsotropyBound {
    let n = eta.dim();
    let (mut best, complete) = search_in_basis(eta, search, true);
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    for _ in 0..search.restarts {
        if best.len() == n {
            break;
        }
        let t = random_unimodular(n, &mut rng);
        let moved = eta.pullback(&t).expect("square matrix of size n");
        let (found, _) = search_in_basis(&moved, search, false);
        if found.len() > best.len() {
            best = found.iter().map(|w| linalg::mat_vec(&t, w)).collect();
        }
    }
    let witness = Subspace::new(n, best).expect("search keeps the basis independent");
    assert!(
        is_isotropic(eta, &witness).expect("dimensions agree"),
        "isotropy search produced a non-isotropic witness"
    );
    IsotropyBound {
        dim: witness.dim(),
        witness,
        coordinate_search_complete: complete,
    }
}

fn search_in_basis(
    eta: &ThreeForm,
    search: &IsotropySearch,
    scan_seeds: bool,
) -> (Vec<Vector>, bool) {
    let n = eta.dim();
    let mut compatible = vec![vec![true; n]; n];
    for ([i, j, k], _) in eta.terms() {
        for (a, b) in [(*i, *j), (*j, *k), (*i, *k)] {
            compatible[a][b] = false;
            compatible[b][a] = false;
        }
    }
    let mut clique = Clique {
        compatible: &compatible,
        best: vec![],
        nodes: 0,
        budget: search.max_subsets,
    };
    clique.extend(&mut vec![], (0..n).collect());
    let complete = clique.nodes <= search.max_subsets;
    let start = clique.best.iter().map(|&i| unit(n, i)).collect();
    let mut best = greedy_extend(eta, start);
    if scan_seeds && best.len() < n {
        for seed in small_seeds(eta, search.max_seeds) {
            let found = greedy_extend(eta, vec![seed]);
            if found.len() > best.len() {
                best = found;
            }
        }
    }
    (best, complete)
}

/// Up to `limit` nonzero vectors in `{-1, 0, 1}^n` (first nonzero entry
/// positive), keeping the few whose kernel `K(<x>)` is largest.
fn small_seeds(eta: &ThreeForm, limit: usize) -> Vec<Vector> {
    const KEEP: usize = 4;
    let n = eta.dim();
    let mut ranked: Vec<(usize, usize, Vector)> = vec![];
    let mut digits = vec![0i8; n];
    let mut seen = 0;
    'outer: loop {
        // next vector in balanced ternary
        let mut pos = 0;
        loop {
            if pos == n {
                break 'outer;
            }
            digits[pos] += 1;
            if digits[pos] > 1 {
                digits[pos] = -1;
                pos += 1;
            } else {
                break;
            }
        }
        if digits.iter().find(|&&d| d != 0) != Some(&1) {
            continue;
        }
        seen += 1;
        if seen > limit {
            break;
        }
        let x: Vector = digits.iter().map(|&d| rational(d as i64)).collect();
        let a = super::contraction_matrix(eta, &x).expect("length n");
        let k = n - linalg::rank(&a);
        ranked.push((k, seen, x));
        ranked.sort_by(|p, q| q.0.cmp(&p.0).then(p.1.cmp(&q.1)));
        ranked.truncate(KEEP);
    }
    ranked.into_iter().map(|(_, _, x)| x).collect()
}

/// Coordinate subsets on which every `mu_abk` vanishes are exactly the
/// cliques of the compatibility graph.
struct Clique<'a> {
    compatible: &'a [Vec<bool>],
    best: Vec<usize>,
    nodes: usize,
    budget: usize,
}

impl Clique<'_> {
    fn extend(&mut self, current: &mut Vec<usize>, candidates: Vec<usize>) {
        self.nodes += 1;
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        if self.nodes > self.budget {
            return;
        }
        for (pos, &c) in candidates.iter().enumerate() {
            if current.len() + candidates.len() - pos <= self.best.len() {
                return;
            }
            let next = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|&d| self.compatible[c][d])
                .collect();
            current.push(c);
            self.extend(current, next);
            current.pop();
        }
    }
}

/// `K(W) = {v : eta(w, v, .) = 0 for all w in W}`; contains `W` when `W` is
/// isotropic, and `W + <v>` is isotropic exactly for `v` in `K(W)`.
fn kernel(eta: &ThreeForm, basis: &[Vector]) -> Vec<Vector> {
    let n = eta.dim();
    let mut rows: Matrix = vec![];
    for w in basis {
        let cols: Vec<Vector> = (0..n).map(|j| eta.cup(w, &unit(n, j))).collect();
        for k in 0..n {
            rows.push(cols.iter().map(|c| c[k].clone()).collect());
        }
    }
    linalg::nullspace(&rows, n)
}

/// Extends `W` inside `K(W)` until `K(W) = W`, choosing at each step the
/// candidate that leaves the largest kernel.
fn greedy_extend(eta: &ThreeForm, mut basis: Vec<Vector>) -> Vec<Vector> {
    let n = eta.dim();
    loop {
        let k = kernel(eta, &basis);
        if k.len() <= basis.len() {
            return basis;
        }
        let span = Subspace::new(n, basis.clone()).expect("independent");
        let mut candidates: Vec<Vector> = k.iter().filter(|v| !span.contains(v)).cloned().collect();
        for a in 0..k.len() {
            for b in a + 1..k.len() {
                let v: Vector = k[a].iter().zip(&k[b]).map(|(x, y)| x + y).collect();
                if !span.contains(&v) {
                    candidates.push(v);
                }
            }
        }
        let best = candidates
            .into_iter()
            .map(|v| {
                let mut next = basis.clone();
                next.push(v);
                (kernel(eta, &next).len(), next)
            })
            .max_by_key(|(d, _)| *d)
            .expect("kernel strictly contains W");
        basis = best.1;
    }
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut t: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    if n < 2 {
        return t;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = rational(rng.gen_range(-2..=2));
        let rj = t[j].clone();
        for (x, y) in t[i].iter_mut().zip(&rj) {
            *x += &c * y;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(eta: &ThreeForm) -> IsotropyBound {
        isotropy_lower_bound(eta, &IsotropySearch::default())
    }

    #[test]
    fn zero_form_is_totally_isotropic() {
        assert_eq!(bound(&ThreeForm::zero(4)).dim, 4);
        assert_eq!(bound(&ThreeForm::zero(0)).dim, 0);
    }

    #[test]
    fn product_forms() {
        for g in 1..=3 {
            let b = bound(&ThreeForm::product_form(g, 2 * g + 1));
            assert_eq!(b.dim, g);
            assert!(b.coordinate_search_complete);
        }
        let b = bound(&ThreeForm::product_form(3, 7));
        let expect = Subspace::coordinate(7, &[0, 2, 4]).unwrap();
        assert!(b.witness.basis().iter().all(|w| expect.contains(w)));
    }

    #[test]
    fn volume_form() {
        assert_eq!(bound(&ThreeForm::volume(3)).dim, 1);
    }

    #[test]
    fn rotated_product_form() {
        let f = ThreeForm::product_form(2, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let t = random_unimodular(5, &mut rng);
            assert_eq!(bound(&f.pullback(&t).unwrap()).dim, 2);
        }
    }

    #[test]
    fn greedy_extension_from_empty() {
        let f = ThreeForm::product_form(2, 5);
        let w = greedy_extend(&f, vec![]);
        let s = Subspace::new(5, w).unwrap();
        assert!(is_isotropic(&f, &s).unwrap());
        assert!(s.dim() >= 1);
    }

    #[test]
    fn unimodular_is_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..6 {
            assert_eq!(linalg::rank(&random_unimodular(n, &mut rng)), n);
        }
    }
}
