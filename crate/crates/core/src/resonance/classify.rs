use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::pfaffian::{is_generic_with, R1Config};
use super::ThreeForm;
use crate::error::{Error, Result};

/// Malcev-completion class of a quasi-Kähler, 1-formal 3-manifold group,
/// read off from its cup-product form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MalcevClass {
    /// Trivial group (`S^3`).
    Trivial,
    /// Free group `F_n` (connected sum of `n` copies of `S^1 x S^2`).
    Free(usize),
    /// `Z x pi_1(Sigma_g)` (`S^1 x Sigma_g`).
    ZxSurface(usize),
    /// No admissible class; the reason names the failed check.
    Obstructed(String),
}

impl MalcevClass {
    pub fn tag(&self) -> &'static str {
        match self {
            MalcevClass::Trivial => "Trivial",
            MalcevClass::Free(_) => "Free",
            MalcevClass::ZxSurface(_) => "ZxSurface",
            MalcevClass::Obstructed(_) => "Obstructed",
        }
    }

    pub fn corank(&self) -> Option<usize> {
        match self {
            MalcevClass::Trivial => Some(0),
            MalcevClass::Free(n) => Some(*n),
            MalcevClass::ZxSurface(g) => Some(*g),
            MalcevClass::Obstructed(_) => None,
        }
    }

    /// Isotropy index of the model manifold; equal to the corank.
    pub fn isotropy_index(&self) -> Option<usize> {
        self.corank()
    }
}

/// The check that decided a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyStep {
    ZeroForm,
    RankThree,
    GenericOdd,
    EvenNonzero,
    OddNonGeneric,
}

impl ClassifyStep {
    pub fn description(self) -> &'static str {
        match self {
            ClassifyStep::ZeroForm => "zero cup form: free Malcev completion",
            ClassifyStep::RankThree => {
                "b1 = 3 with nonzero cup form: multiple of the torus volume form"
            }
            ClassifyStep::GenericOdd => "odd b1 with generic cup form",
            ClassifyStep::EvenNonzero => "even b1 with nonzero cup form",
            ClassifyStep::OddNonGeneric => "odd b1 with non-generic cup form",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: MalcevClass,
    pub step: ClassifyStep,
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("class", self.class.tag())?;
        match &self.class {
            MalcevClass::Free(n) => m.serialize_entry("n", n)?,
            MalcevClass::ZxSurface(g) => m.serialize_entry("g", g)?,
            MalcevClass::Obstructed(r) => m.serialize_entry("reason", r)?,
            MalcevClass::Trivial => {}
        }
        m.serialize_entry("corank", &self.class.corank())?;
        m.serialize_entry("isotropy_index", &self.class.isotropy_index())?;
        m.serialize_entry("step", self.step.description())?;
        m.end()
    }
}

/// Decides the Malcev class of `eta`.
///
/// The verdict assumes the group is 1-formal and quasi-Kähler. The Heisenberg
/// nilmanifold has `eta = 0` with `n = 2` but is not 1-formal, so the `Free(2)`
/// answer says nothing about it.
pub fn classify_malcev(eta: &ThreeForm) -> Classification {
    classify_malcev_with(eta, &R1Config::default())
}

pub fn classify_malcev_with(eta: &ThreeForm, cfg: &R1Config) -> Classification {
    let n = eta.dim();
    let (class, step) = if eta.is_zero() {
        let class = if n == 0 {
            MalcevClass::Trivial
        } else {
            MalcevClass::Free(n)
        };
        (class, ClassifyStep::ZeroForm)
    } else if n % 2 == 0 {
        let s = ClassifyStep::EvenNonzero;
        (MalcevClass::Obstructed(s.description().into()), s)
    } else if n == 3 {
        (MalcevClass::ZxSurface(1), ClassifyStep::RankThree)
    } else if is_generic_with(eta, cfg).expect("n is odd") {
        (
            MalcevClass::ZxSurface((n - 1) / 2),
            ClassifyStep::GenericOdd,
        )
    } else {
        let s = ClassifyStep::OddNonGeneric;
        (MalcevClass::Obstructed(s.description().into()), s)
    };
    Classification { class, step }
}

pub fn corank_of_class(c: &MalcevClass) -> Result<usize> {
    match c {
        MalcevClass::Obstructed(r) => Err(Error::InvalidInput(format!(
            "no corank for an obstructed class ({r})"
        ))),
        _ => Ok(c.corank().expect("classified")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = classify_malcev(&ThreeForm::zero(4));
        assert_eq!(c.class, MalcevClass::Free(4));
        assert_eq!(corank_of_class(&c.class).unwrap(), 4);

        let c = classify_malcev(&ThreeForm::volume(3));
        assert_eq!(c.class, MalcevClass::ZxSurface(1));
        assert_eq!(c.step, ClassifyStep::RankThree);

        let c = classify_malcev(&ThreeForm::product_form(2, 5));
        assert_eq!(c.class, MalcevClass::ZxSurface(2));
        assert_eq!(c.class.isotropy_index(), Some(2));

        let c = classify_malcev(&ThreeForm::volume(4));
        assert_eq!(
            c.class,
            MalcevClass::Obstructed("even b1 with nonzero cup form".into())
        );
        assert!(corank_of_class(&c.class).is_err());

        let c = classify_malcev(&ThreeForm::volume(5));
        assert_eq!(c.step, ClassifyStep::OddNonGeneric);
        assert_eq!(
            classify_malcev(&ThreeForm::zero(0)).class,
            MalcevClass::Trivial
        );
    }

    #[test]
    fn corank_values() {
        assert_eq!(corank_of_class(&MalcevClass::Free(7)).unwrap(), 7);
        assert_eq!(corank_of_class(&MalcevClass::ZxSurface(3)).unwrap(), 3);
        assert_eq!(corank_of_class(&MalcevClass::Trivial).unwrap(), 0);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(classify_malcev(&ThreeForm::volume(3))).unwrap();
        assert_eq!(v["class"], "ZxSurface");
        assert_eq!(v["g"], 1);
        assert_eq!(v["corank"], 1);
        let v = serde_json::to_value(classify_malcev(&ThreeForm::volume(4))).unwrap();
        assert!(v["corank"].is_null());
    }
}
