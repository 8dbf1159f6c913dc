use jumploci_core::presentation::{
    abelianization, fox_derivative, free_reduce, mat_mul, smith_normal_form, IntMatrix,
};
use jumploci_core::{LaurentPoly, Letter, Presentation, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn letters(n: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..n, prop::bool::ANY), 0..max_len)
        .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    letters(n, max_len).prop_map(|l| free_reduce(&l))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows).prop_map(|m| {
        m.into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    })
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3), 0..8).prop_map(move |ops| {
        let mut m: IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j))).collect())
            .collect();
        for (i, j, c) in ops {
            if i != j {
                let rj = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(&rj) {
                    *x += y * c;
                }
            }
        }
        m
    })
}

/// gcd of all k x k minors, by brute force over row and column subsets.
fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::from(1);
        }
        let mut acc = BigInt::zero();
        for c in 0..m.len() {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][c] * det(&minor);
            if c % 2 == 0 {
                acc += term
            } else {
                acc -= term
            }
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == k)
            .map(|s| (0..n).filter(|b| s >> b & 1 == 1).collect())
            .collect()
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut g = BigInt::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect())
                .collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn free_reduction_is_idempotent(l in letters(3, 16)) {
        let w = free_reduce(&l);
        prop_assert_eq!(free_reduce(w.letters()), w.clone());
        for pair in w.letters().windows(2) {
            prop_assert!(pair[1] != pair[0].inv());
        }
        prop_assert_eq!(w.concat(&w.inverse()), Word::identity());
    }

    #[test]
    fn fundamental_identity(w in word(3, 14)) {
        // sum_i dw/dx_i (t_i - 1) = t^{ab(w)} - 1 over the free group
        let p = Presentation::free(3);
        let ab = abelianization(&p).unwrap();
        let mut lhs = LaurentPoly::zero(3);
        for i in 0..3 {
            lhs = &lhs + &(&fox_derivative(&w, i, &ab).unwrap() * &ab.generator_minus_one(i));
        }
        let rhs = &LaurentPoly::monomial(ab.word_image(&w), 1) - &LaurentPoly::one(3);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fox_product_rule(u in word(2, 8), v in word(2, 8)) {
        let ab = abelianization(&Presentation::free(2)).unwrap();
        let tu = LaurentPoly::monomial(ab.word_image(&u), 1);
        for i in 0..2 {
            let lhs = fox_derivative(&u.concat(&v), i, &ab).unwrap();
            let rhs = &fox_derivative(&u, i, &ab).unwrap() + &(&tu * &fox_derivative(&v, i, &ab).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(m in int_matrix(3, 3)) {
        let s = smith_normal_form(&m, 3);
        let d = mat_mul(&mat_mul(&s.left, &m, 3, 3), &s.right, 3, 3);
        let mut prod = BigInt::from(1);
        for k in 0..3 {
            for j in 0..3 {
                if j != k {
                    prop_assert!(d[k][j].is_zero());
                }
            }
            prop_assert_eq!(&d[k][k], &s.diagonal[k]);
            prop_assert!(!s.diagonal[k].is_negative());
            prod *= &s.diagonal[k];
            prop_assert_eq!(prod.clone(), determinantal_divisor(&m, k + 1));
        }
    }

    #[test]
    fn smith_form_is_invariant(m in int_matrix(2, 3), p in unimodular(2), q in unimodular(3)) {
        let moved = mat_mul(&mat_mul(&p, &m, 2, 3), &q, 3, 3);
        prop_assert_eq!(smith_normal_form(&moved, 3).diagonal, smith_normal_form(&m, 3).diagonal);
    }

    #[test]
    fn presentation_round_trip(rels in prop::collection::vec(word(3, 10), 0..4)) {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = Presentation::new(names, rels).unwrap();
        let again = Presentation::parse(&p.to_string()).unwrap();
        prop_assert_eq!(&again, &p);
        let json = serde_json::to_string(&p.to_spec()).unwrap();
        prop_assert_eq!(&Presentation::parse_any(&json).unwrap(), &p);
    }

    #[test]
    fn relators_die_in_abelianization(rels in prop::collection::vec(word(3, 10), 0..4)) {
        let p = Presentation::new(vec!["a".into(), "b".into(), "c".into()], rels).unwrap();
        let ab = abelianization(&p).unwrap();
        for r in p.relators() {
            prop_assert!(ab.word_image(r).iter().all(|&e| e == 0));
        }
        prop_assert!(ab.b1 + ab.torsion.len() <= 3);
    }
}
