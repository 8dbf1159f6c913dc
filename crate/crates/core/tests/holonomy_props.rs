use jumploci_core::holonomy::{lie_ranks, pairs, QuadraticData};
use jumploci_core::linalg::{self, rational};
use num_rational::BigRational;
use proptest::prelude::*;

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
        -r
    } else {
        r
    }
}

fn witt(n: usize, d: usize) -> usize {
    let s: i64 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mobius(d / e) * (n as i64).pow(e as u32))
        .sum();
    (s / d as i64) as usize
}

fn relations(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    let len = n * (n - 1) / 2;
    prop::collection::vec(prop::collection::vec(-2i64..=2, len), count).prop_map(|rs| {
        rs.into_iter()
            .map(|r| r.into_iter().map(rational).collect())
            .collect()
    })
}

#[test]
fn free_ranks_are_witt_numbers() {
    for n in 2..=4 {
        let r = lie_ranks(&QuadraticData::free(n), 6).unwrap();
        let w: Vec<usize> = (1..=6).map(|d| witt(n, d)).collect();
        assert_eq!(r.ranks, w, "n = {n}");
    }
}

/// Independent oracle for a quadratic Lie algebra on two generators: build
/// the degree-d piece as the span of all left-normed brackets of letters in
/// the tensor algebra (no Hall basis), and the ideal as the span of all
/// left-normed brackets applied to the relation.
#[test]
fn z2_ranks_by_bracket_closure() {
    type Vecd = std::collections::BTreeMap<Vec<usize>, i64>;
    fn bracket(a: &Vecd, b: &Vecd) -> Vecd {
        let mut out = Vecd::new();
        for (u, x) in a {
            for (v, y) in b {
                let mut uv = u.clone();
                uv.extend(v);
                *out.entry(uv).or_default() += x * y;
                let mut vu = v.clone();
                vu.extend(u);
                *out.entry(vu).or_default() -= x * y;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }
    fn letter(i: usize) -> Vecd {
        Vecd::from([(vec![i], 1)])
    }
    fn rank(vs: &[Vecd], d: usize) -> usize {
        let words: Vec<Vec<usize>> = (0..1usize << d)
            .map(|m| (0..d).map(|b| m >> (d - 1 - b) & 1).collect())
            .collect();
        let rows: Vec<Vec<BigRational>> = vs
            .iter()
            .map(|v| {
                words
                    .iter()
                    .map(|w| rational(*v.get(w).unwrap_or(&0)))
                    .collect()
            })
            .collect();
        linalg::rank(&rows)
    }
    let rel = bracket(&letter(0), &letter(1));
    let mut lie = vec![letter(0), letter(1)];
    let mut ideal = vec![rel];
    let mut ranks = vec![2];
    for d in 2..=4 {
        lie = lie
            .iter()
            .flat_map(|v| (0..2).map(move |i| bracket(&letter(i), v)))
            .collect();
        if d > 2 {
            ideal = ideal
                .iter()
                .flat_map(|v| (0..2).map(move |i| bracket(&letter(i), v)))
                .collect();
        }
        ranks.push(rank(&lie, d) - rank(&ideal, d));
    }
    assert_eq!(ranks, vec![2, 0, 0, 0]);
    assert_eq!(
        lie_ranks(&QuadraticData::surface(1), 4).unwrap().ranks,
        ranks
    );
}

#[test]
fn surface_genus_two() {
    assert_eq!(
        lie_ranks(&QuadraticData::surface(2), 2).unwrap().degree(2),
        5
    );
    let q = QuadraticData::new(
        4,
        vec![pairs(4)
            .map(|(i, j)| rational(i64::from((i, j) == (0, 1) || (i, j) == (2, 3))))
            .collect()],
    )
    .unwrap();
    assert_eq!(q, QuadraticData::surface(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ranks_ignore_choice_of_spanning_set(rels in relations(3, 2), mix in prop::collection::vec(-3i64..=3, 4)) {
        prop_assume!(rels.len() == 2);
        let (a, b, c, d) = (rational(mix[0]), rational(mix[1]), rational(mix[2]), rational(mix[3]));
        prop_assume!(&a * &d - &b * &c != rational(0));
        let rebased: Vec<Vec<BigRational>> = vec![
            rels[0].iter().zip(&rels[1]).map(|(x, y)| &a * x + &b * y).collect(),
            rels[0].iter().zip(&rels[1]).map(|(x, y)| &c * x + &d * y).collect(),
        ];
        let q1 = QuadraticData::new(3, rels).unwrap();
        let q2 = QuadraticData::new(3, rebased).unwrap();
        prop_assert_eq!(lie_ranks(&q1, 5).unwrap(), lie_ranks(&q2, 5).unwrap());
    }

    #[test]
    fn adding_relations_never_increases_ranks(rels in relations(4, 2)) {
        let mut q = QuadraticData::free(4);
        let mut prev = lie_ranks(&q, 4).unwrap().ranks;
        for r in rels {
            q = q.with_relation(r).unwrap();
            let next = lie_ranks(&q, 4).unwrap().ranks;
            prop_assert!(next.iter().zip(&prev).all(|(a, b)| a <= b), "{:?} vs {:?}", next, prev);
            prop_assert_eq!(next[0], 4);
            prev = next;
        }
    }
}
