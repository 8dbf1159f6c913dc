use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::smith::{smith_normal_form, IntMatrix};
use super::{Presentation, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// `H_1 = Z^b1 + torsion`, with the image of each generator.
///
/// `free_images[j]` is the image of generator `j` in the maximal torsion-free
/// quotient `Z^b1`; these are the Laurent exponents used by Fox calculus.
/// `torsion_images[j][k]` is its coordinate in `Z/torsion[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub b1: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
    pub free_images: Vec<Vec<i64>>,
    #[serde(skip)]
    pub torsion_images: Vec<Vec<BigInt>>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Abelianization {
    pub fn num_generators(&self) -> usize {
        self.free_images.len()
    }

    /// Monomial exponent of a word in `Z^b1`.
    pub fn word_image(&self, w: &Word) -> Vec<i64> {
        let mut e = vec![0; self.b1];
        for l in w.letters() {
            for (a, b) in e.iter_mut().zip(&self.free_images[l.generator]) {
                *a += l.sign() * b;
            }
        }
        e
    }

    /// `t^{ab(x_j)} - 1`.
    pub fn generator_minus_one(&self, j: usize) -> LaurentPoly {
        &LaurentPoly::monomial(self.free_images[j].clone(), 1) - &LaurentPoly::one(self.b1)
    }
}

pub fn abelianization(p: &Presentation) -> Result<Abelianization> {
    let g = p.num_generators();
    let m: IntMatrix = p
        .exponent_sum_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    let snf = smith_normal_form(&m, g);
    let rank = snf.rank;
    let b1 = g - rank;
    let torsion_idx: Vec<usize> = (0..rank).filter(|&k| !snf.diagonal[k].is_one()).collect();
    let torsion: Vec<BigInt> = torsion_idx
        .iter()
        .map(|&k| snf.diagonal[k].clone())
        .collect();
    let mut free_images = Vec::with_capacity(g);
    let mut torsion_images = Vec::with_capacity(g);
    for row in &snf.right {
        let free = row[rank..]
            .iter()
            .map(|x| {
                x.to_i64()
                    .ok_or_else(|| Error::invariant("abelianization exponent exceeds i64"))
            })
            .collect::<Result<Vec<i64>>>()?;
        free_images.push(free);
        torsion_images.push(
            torsion_idx
                .iter()
                .map(|&k| {
                    let d = &snf.diagonal[k];
                    ((&row[k] % d) + d) % d
                })
                .collect(),
        );
    }
    debug_assert!(p.relators().iter().all(|r| {
        let ab = Abelianization {
            b1,
            torsion: vec![],
            free_images: free_images.clone(),
            torsion_images: vec![],
        };
        ab.word_image(r).iter().all(Zero::is_zero)
    }));
    Ok(Abelianization {
        b1,
        torsion,
        free_images,
        torsion_images,
    })
}

/// Abelianized Fox derivative `d w / d x_i` in `Z[Z^b1]`.
///
/// The free-group product rule is applied letter by letter while tracking the
/// abelianized prefix, so no group-ring element is ever materialised:
/// an occurrence of `x_i` after prefix `u` contributes `+t^{ab(u)}`, an
/// occurrence of `x_i^-1` contributes `-t^{ab(u) - ab(x_i)}`.
pub fn fox_derivative(w: &Word, i: usize, ab: &Abelianization) -> Result<LaurentPoly> {
    let g = ab.num_generators();
    if i >= g {
        return Err(Error::GeneratorOutOfRange { index: i, count: g });
    }
    if let Some(l) = w.letters().iter().find(|l| l.generator >= g) {
        return Err(Error::GeneratorOutOfRange {
            index: l.generator,
            count: g,
        });
    }
    let mut prefix = vec![0i64; ab.b1];
    let mut out = LaurentPoly::zero(ab.b1);
    let step = &ab.free_images[i];
    for l in w.letters() {
        if l.generator == i {
            if l.inverse {
                let e = prefix.iter().zip(step).map(|(a, b)| a - b).collect();
                out.add_term(e, BigInt::from(-1));
            } else {
                out.add_term(prefix.clone(), BigInt::one());
            }
        }
        for (a, b) in prefix.iter_mut().zip(&ab.free_images[l.generator]) {
            *a += l.sign() * b;
        }
    }
    Ok(out)
}
