//! Seifert invariants of Brieskorn links `Sigma(a_1, ..., a_n)` and what they
//! say about the first characteristic variety, formality and the tangent
//! cone.
//!
//! With `l = lcm(a)`, `l_j = lcm(a without a_j)` and `a = prod(a)`:
//! `alpha_j = l / l_j`, `s_j = a / (a_j l_j)` copies of each exceptional orbit
//! (dropped when `alpha_j = 1`), genus `g = (2 + (n-2) a / l - sum s_j) / 2`,
//! Euler number `e = -a / l^2`. The orbit invariant `beta_j` is the inverse of
//! the slice weight `l / a_j` modulo `alpha_j`; it never enters any of the
//! derived quantities below.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrieskornInput {
    exponents: Vec<u64>,
}

impl BrieskornInput {
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() < 3 {
            return Err(Error::InvalidInput(
                "a Brieskorn link needs at least three exponents".into(),
            ));
        }
        if let Some(a) = exponents.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidInput(format!(
                "Brieskorn exponents must be at least 2, got {a}"
            )));
        }
        Ok(BrieskornInput { exponents })
    }

    /// Parses a comma-separated list such as `3,3,6`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = vec![];
        let mut offset = 0;
        for part in text.split(',') {
            let v = part
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(offset, format!("bad exponent '{}'", part.trim())))?;
            out.push(v);
            offset += part.len() + 1;
        }
        BrieskornInput::new(out)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

/// An exceptional orbit type `(alpha, beta)` repeated `multiplicity` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Orbit {
    pub alpha: u64,
    pub beta: u64,
    pub multiplicity: u64,
}

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(q)
}

/// Emits an arbitrary-size integer as a JSON number, not a string.
fn ser_int<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    let n: serde_json::Number = x.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    orbits: Vec<Orbit>,
    genus: u64,
    #[serde(serialize_with = "ser_rational")]
    euler: BigRational,
}

impl SeifertData {
    pub fn new(orbits: Vec<Orbit>, genus: u64, euler: BigRational) -> Result<Self> {
        for o in &orbits {
            if o.alpha <= 1 {
                return Err(Error::invariant(format!(
                    "orbit alpha {} must exceed 1",
                    o.alpha
                )));
            }
            if o.beta == 0 || o.beta >= o.alpha || o.alpha.gcd(&o.beta) != 1 {
                return Err(Error::invariant(format!(
                    "orbit beta {} must be a unit residue modulo {}",
                    o.beta, o.alpha
                )));
            }
            if o.multiplicity == 0 {
                return Err(Error::invariant("orbit multiplicity must be positive"));
            }
        }
        if !euler.is_negative() {
            return Err(Error::invariant(format!(
                "Euler number {euler} must be negative"
            )));
        }
        Ok(SeifertData {
            orbits,
            genus,
            euler,
        })
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn euler(&self) -> &BigRational {
        &self.euler
    }

    /// Orbit multipliers with repetition.
    pub fn expanded_alphas(&self) -> impl Iterator<Item = u64> + '_ {
        self.orbits
            .iter()
            .flat_map(|o| std::iter::repeat(o.alpha).take(o.multiplicity as usize))
    }

    /// Orbits sorted, with equal types merged; equality of the result is the
    /// multiset comparison.
    pub fn canonical_orbits(&self) -> Vec<Orbit> {
        let mut v = self.orbits.clone();
        v.sort_by_key(|o| (o.alpha, o.beta));
        let mut out: Vec<Orbit> = vec![];
        for o in v {
            match out.last_mut() {
                Some(l) if l.alpha == o.alpha && l.beta == o.beta => {
                    l.multiplicity += o.multiplicity
                }
                _ => out.push(o),
            }
        }
        out
    }

    /// `e + sum beta_j / alpha_j` over the expanded orbit list.
    pub fn euler_residue(&self) -> BigRational {
        self.orbits.iter().fold(self.euler.clone(), |acc, o| {
            acc + BigRational::new(
                BigInt::from(o.beta) * BigInt::from(o.multiplicity),
                BigInt::from(o.alpha),
            )
        })
    }
}

fn lcm_all<'a>(it: impl Iterator<Item = &'a u64>) -> u64 {
    it.fold(1, |acc, &a| acc.lcm(&a))
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Modular inverse of `a` modulo `m > 1`, in `1..m`.
fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i128) as u64)
}

fn integral(q: &BigRational, what: &str) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::invariant(format!("{what} = {q} is not an integer")))
    }
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::invariant(format!("{what} = {x} does not fit in u64")))
}

pub fn brieskorn_seifert(input: &BrieskornInput) -> Result<SeifertData> {
    let a = &input.exponents;
    let n = a.len();
    let l = lcm_all(a.iter());
    let prod: BigInt = a.iter().map(|&x| big(x)).product();
    let mut orbits = vec![];
    let mut sum_s = BigInt::zero();
    for j in 0..n {
        let lj = lcm_all(
            a.iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, x)| x),
        );
        let alpha = l / lj;
        let s = integral(
            &BigRational::new(prod.clone(), big(a[j]) * big(lj)),
            &format!("s_{}", j + 1),
        )?;
        sum_s += &s;
        if alpha == 1 {
            continue;
        }
        let weight = (l / a[j]) % alpha;
        let beta = inverse_mod(weight, alpha).ok_or_else(|| {
            Error::invariant(format!(
                "slice weight {weight} is not a unit modulo alpha_{} = {alpha}",
                j + 1
            ))
        })?;
        orbits.push(Orbit {
            alpha,
            beta,
            multiplicity: to_u64(&s, "s_j")?,
        });
    }
    let two_g = BigRational::from_integer(big(2))
        + BigRational::new(big(n as u64 - 2) * &prod, big(l))
        - BigRational::from_integer(sum_s);
    let two_g = integral(&two_g, "2g")?;
    if two_g.is_negative() || two_g.is_odd() {
        return Err(Error::invariant(format!(
            "genus formula gives 2g = {two_g}, not a nonnegative even integer"
        )));
    }
    let genus = to_u64(&(two_g / 2), "g")?;
    let euler = -BigRational::new(prod, big(l) * big(l));
    SeifertData::new(orbits, genus, euler)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionData {
    /// Order of the torsion subgroup of `H_1`.
    #[serde(serialize_with = "ser_int")]
    pub torsion_order: BigInt,
    /// Order of the class of a regular fibre in the torsion subgroup.
    #[serde(serialize_with = "ser_int")]
    pub fiber_class_order: BigInt,
    /// Order of the quotient of the torsion by the fibre class.
    #[serde(serialize_with = "ser_int")]
    pub alpha: BigInt,
}

pub fn torsion_data(s: &SeifertData) -> Result<TorsionData> {
    let alphas: Vec<u64> = s.expanded_alphas().collect();
    let prod: BigInt = alphas.iter().map(|&x| big(x)).product();
    let lcm = big(lcm_all(alphas.iter()));
    let abs_e = s.euler.abs();
    let t = integral(&(BigRational::from_integer(prod.clone()) * &abs_e), "|T|")?;
    let h = integral(&(BigRational::from_integer(lcm.clone()) * &abs_e), "ord(h)")?;
    let alpha = integral(&BigRational::new(prod, lcm), "alpha")?;
    if t != &h * &alpha {
        return Err(Error::invariant(format!(
            "|T| = {t} differs from ord(h) * alpha = {h} * {alpha}"
        )));
    }
    if t.is_zero() {
        return Err(Error::invariant("torsion order is zero"));
    }
    Ok(TorsionData {
        torsion_order: t,
        fiber_class_order: h,
        alpha,
    })
}

/// Positive-dimensional irreducible components of `V_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    #[serde(rename = "components", serialize_with = "ser_int")]
    pub positive_dim_count: BigInt,
    #[serde(rename = "dim")]
    pub component_dim: u64,
    pub includes_identity_component: bool,
    #[serde(serialize_with = "ser_int")]
    pub translated_count: BigInt,
}

pub fn v1_components(s: &SeifertData) -> Result<ComponentReport> {
    let g = s.genus;
    if g == 0 {
        return Ok(ComponentReport {
            positive_dim_count: BigInt::zero(),
            component_dim: 0,
            includes_identity_component: false,
            translated_count: BigInt::zero(),
        });
    }
    let translated = torsion_data(s)?.alpha - 1;
    let identity = g > 1;
    Ok(ComponentReport {
        positive_dim_count: &translated + BigInt::from(u8::from(identity)),
        component_dim: 2 * g,
        includes_identity_component: identity,
        translated_count: translated,
    })
}

/// The link group is 1-formal exactly when the base curve is rational.
pub fn is_one_formal_link(s: &SeifertData) -> bool {
    s.genus == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Germ {
    /// The germ at 1 is the point `{1}`.
    Point,
    /// The germ at 1 is the whole identity component `(C*)^dim`.
    FullTorus { dim: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentConeReport {
    pub germ_v1: Germ,
    pub r1_dim: u64,
    pub formula_holds: bool,
}

/// Germ of `V_1` at 1 against `R_1 = H^1`. The tangent cone of a point is 0,
/// so the formula fails exactly when `g = 1`.
pub fn tangent_cone_report(s: &SeifertData) -> TangentConeReport {
    let g = s.genus;
    let germ_v1 = if g > 1 {
        Germ::FullTorus { dim: 2 * g }
    } else {
        Germ::Point
    };
    let tc_dim = match germ_v1 {
        Germ::Point => 0,
        Germ::FullTorus { dim } => dim,
    };
    let r1_dim = 2 * g;
    TangentConeReport {
        germ_v1,
        r1_dim,
        formula_holds: tc_dim == r1_dim,
    }
}

/// Everything the `brieskorn` command reports for one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrieskornReport {
    pub exponents: Vec<u64>,
    pub seifert: SeifertData,
    pub torsion: TorsionData,
    #[serde(flatten)]
    pub components: ComponentReport,
    pub one_formal: bool,
    pub tangent_cone: TangentConeReport,
}

pub fn brieskorn_report(input: &BrieskornInput) -> Result<BrieskornReport> {
    let seifert = brieskorn_seifert(input)?;
    Ok(BrieskornReport {
        exponents: input.exponents.clone(),
        torsion: torsion_data(&seifert)?,
        components: v1_components(&seifert)?,
        one_formal: is_one_formal_link(&seifert),
        tangent_cone: tangent_cone_report(&seifert),
        seifert,
    })
}

/// All nondecreasing tuples of length `n` with entries in `2..=max`.
pub fn sweep_inputs(max: u64, n: usize) -> Vec<BrieskornInput> {
    fn go(start: u64, max: u64, n: usize, cur: &mut Vec<u64>, out: &mut Vec<BrieskornInput>) {
        if cur.len() == n {
            out.push(BrieskornInput {
                exponents: cur.clone(),
            });
            return;
        }
        for a in start..=max {
            cur.push(a);
            go(a, max, n, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    if n >= 3 && max >= 2 {
        go(2, max, n, &mut vec![], &mut out);
    }
    out
}
