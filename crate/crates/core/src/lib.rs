//! Exact computation of cohomology jump loci invariants for finitely
//! presented groups and closed orientable 3-manifolds.
//!
//! The crate is organised by subsystem:
//!
//! * [`laurent`]: integer Laurent polynomials, gcd up to units, cyclotomic
//!   evaluation at finite-order characters.
//! * [`presentation`]: group presentations, Smith normal form,
//!   abelianization and Fox derivatives.
//! * [`alexander`]: Alexander matrices, elementary ideals, the Alexander
//!   polynomial and characteristic-variety membership.
//! * [`resonance`]: triple cup-product forms, first resonance variety,
//!   isotropic subspaces and the Malcev-class classification.
//! * [`holonomy`]: graded ranks of holonomy Lie algebras via Hall bases.
//! * [`seifert`]: Seifert invariants of Brieskorn links and the derived
//!   component counts for the first characteristic variety.
//!
//! All arithmetic is exact. Nothing in this crate uses floating point.

pub mod alexander;
pub mod error;
pub mod holonomy;
pub mod laurent;
pub mod linalg;
pub mod presentation;
pub mod resonance;
pub mod seifert;

pub use alexander::{AlexanderMatrix, AlmostPrincipalReport, ElementaryIdeal};
pub use error::{Error, Result};
pub use holonomy::{GradedRanks, QuadraticData};
pub use laurent::{Character, CyclotomicElement, CyclotomicField, LaurentPoly};
pub use presentation::{Abelianization, Letter, Presentation, SmithForm, Word};
pub use resonance::{
    Classification, IsotropyBound, IsotropySearch, MalcevClass, R1Mode, R1Report, Subspace,
    ThreeForm,
};
pub use seifert::{
    BrieskornInput, ComponentReport, Orbit, SeifertData, TangentConeReport, TorsionData,
};
