use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{contraction_matrix, ThreeForm};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::linalg;

/// How [`r1_is_full_with`] reached its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum R1Mode {
    /// `n` even: every skew restriction to a complement has odd size.
    EvenDimension,
    /// All principal `(n-1)`-Pfaffians of `A(x)` expanded as polynomials.
    Symbolic,
    /// Seeded random integer points; "full" means no point of rank `n - 1`
    /// was found in `trials` attempts.
    Randomized { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct R1Report {
    pub full: bool,
    #[serde(flatten)]
    pub mode: R1Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct R1Config {
    /// Largest `n` handled symbolically.
    pub symbolic_max_n: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for R1Config {
    fn default() -> Self {
        R1Config {
            symbolic_max_n: 9,
            trials: 64,
            seed: 0,
        }
    }
}

pub fn r1_is_full(eta: &ThreeForm) -> bool {
    r1_is_full_with(eta, &R1Config::default()).full
}

/// Whether `R_1` is all of `Q^n`.
///
/// For odd `n` a generic point has `rank A(x) = n - 1` unless every principal
/// `(n-1)`-Pfaffian of the symbolic matrix `A(x)` vanishes identically.
pub fn r1_is_full_with(eta: &ThreeForm, cfg: &R1Config) -> R1Report {
    let n = eta.dim();
    if n % 2 == 0 {
        return R1Report {
            full: true,
            mode: R1Mode::EvenDimension,
        };
    }
    if n <= cfg.symbolic_max_n.min(63) {
        let a = symbolic_matrix(eta);
        let mut pf = Pfaffians::new(&a, n);
        let all = (1u64 << n) - 1;
        let full = (0..n).all(|drop| pf.get(all & !(1 << drop)).is_zero());
        return R1Report {
            full,
            mode: R1Mode::Symbolic,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut full = true;
    for _ in 0..cfg.trials {
        let x: Vec<BigRational> = (0..n)
            .map(|_| linalg::rational(rng.gen_range(-50..=50)))
            .collect();
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        let a = contraction_matrix(eta, &x).expect("dimension matches");
        if linalg::rank(&a) == n - 1 {
            full = false;
            break;
        }
    }
    R1Report {
        full,
        mode: R1Mode::Randomized {
            trials: cfg.trials,
            seed: cfg.seed,
        },
    }
}

/// Genericity of an odd-dimensional form: some `x` has `rank A(x) = n - 1`.
pub fn is_generic(eta: &ThreeForm) -> Result<bool> {
    is_generic_with(eta, &R1Config::default())
}

pub fn is_generic_with(eta: &ThreeForm, cfg: &R1Config) -> Result<bool> {
    if eta.dim() % 2 == 0 {
        return Err(Error::InvalidInput(format!(
            "genericity is defined for odd n, got n = {}",
            eta.dim()
        )));
    }
    Ok(!r1_is_full_with(eta, cfg).full)
}

/// `A(x)` with linear polynomial entries in `x_1..x_n`, denominators cleared.
fn symbolic_matrix(eta: &ThreeForm) -> Vec<Vec<LaurentPoly>> {
    let n = eta.dim();
    let mut a = vec![vec![LaurentPoly::zero(n); n]; n];
    for ([i, j, k], c) in eta.integral_multiple() {
        for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
            let term = LaurentPoly::var(n, r).scale(&c);
            a[p][q] = &a[p][q] + &term;
            a[q][p] = &a[q][p] - &term;
        }
    }
    a
}

/// Pfaffians of principal submatrices, memoized on the index bitmask.
struct Pfaffians<'a> {
    a: &'a [Vec<LaurentPoly>],
    n: usize,
    memo: HashMap<u64, LaurentPoly>,
}

impl<'a> Pfaffians<'a> {
    fn new(a: &'a [Vec<LaurentPoly>], n: usize) -> Self {
        Pfaffians {
            a,
            n,
            memo: HashMap::new(),
        }
    }

    fn get(&mut self, set: u64) -> LaurentPoly {
        if set == 0 {
            return LaurentPoly::one(self.n);
        }
        if set.count_ones() % 2 == 1 {
            return LaurentPoly::zero(self.n);
        }
        if let Some(p) = self.memo.get(&set) {
            return p.clone();
        }
        let idx: Vec<usize> = (0..64).filter(|b| set >> b & 1 == 1).collect();
        let first = idx[0];
        let mut acc = LaurentPoly::zero(self.n);
        for (p, &j) in idx.iter().enumerate().skip(1) {
            let entry = &self.a[first][j];
            if entry.is_zero() {
                continue;
            }
            let rest = self.get(set & !(1 << first) & !(1 << j));
            if rest.is_zero() {
                continue;
            }
            let term = entry * &rest;
            acc = if p % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        self.memo.insert(set, acc.clone());
        acc
    }
}

#[cfg(test)]
fn integer_pfaffian(m: &[Vec<i64>]) -> num_bigint::BigInt {
    let a: Vec<Vec<LaurentPoly>> = m
        .iter()
        .map(|r| r.iter().map(|&x| LaurentPoly::constant(0, x)).collect())
        .collect();
    Pfaffians::new(&a, 0).get((1u64 << m.len()) - 1).coeff(&[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::in_r1;
    use num_bigint::BigInt;

    #[test]
    fn pfaffian_small() {
        assert_eq!(
            integer_pfaffian(&[vec![0, 3], vec![-3, 0]]),
            BigInt::from(3)
        );
        // a12 a34 - a13 a24 + a14 a23
        let m = vec![
            vec![0, 1, 2, 3],
            vec![-1, 0, 4, 5],
            vec![-2, -4, 0, 6],
            vec![-3, -5, -6, 0],
        ];
        assert_eq!(integer_pfaffian(&m), BigInt::from(6 - 2 * 5 + 3 * 4));
    }

    #[test]
    fn r1_full_examples() {
        assert!(!r1_is_full(&ThreeForm::volume(3)));
        assert!(r1_is_full(&ThreeForm::zero(4).with_term(0, 1, 2, 1)));
        assert!(!r1_is_full(&ThreeForm::product_form(2, 5)));
        assert!(r1_is_full(&ThreeForm::volume(5)));
        assert!(r1_is_full(&ThreeForm::zero(3)));
        assert!(!r1_is_full(&ThreeForm::zero(1)));
    }

    #[test]
    fn genericity() {
        assert!(is_generic(&ThreeForm::volume(3)).unwrap());
        assert!(!is_generic(&ThreeForm::volume(5)).unwrap());
        assert!(is_generic(&ThreeForm::product_form(2, 5)).unwrap());
        assert!(is_generic(&ThreeForm::zero(4)).is_err());
    }

    #[test]
    fn randomized_agrees_with_symbolic() {
        let cfg = R1Config {
            symbolic_max_n: 0,
            ..R1Config::default()
        };
        for f in [
            ThreeForm::product_form(3, 7),
            ThreeForm::product_form(2, 7),
            ThreeForm::volume(7),
        ] {
            let sym = r1_is_full_with(&f, &R1Config::default());
            let rnd = r1_is_full_with(&f, &cfg);
            assert_eq!(sym.mode, R1Mode::Symbolic);
            assert_eq!(
                rnd.mode,
                R1Mode::Randomized {
                    trials: 64,
                    seed: 0
                }
            );
            assert_eq!(sym.full, rnd.full);
        }
    }

    #[test]
    fn product_form_point_outside_r1() {
        let f = ThreeForm::product_form(2, 5);
        let x: Vec<_> = [0, 0, 0, 0, 1]
            .iter()
            .map(|&c| linalg::rational(c))
            .collect();
        assert!(!in_r1(&f, &x).unwrap());
    }
}
