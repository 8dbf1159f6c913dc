//! Finite group presentations, free-group words, abelianization and Fox
//! calculus.

mod fox;
mod parse;
mod smith;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use fox::{abelianization, fox_derivative, Abelianization};
pub use smith::{mat_mul, smith_normal_form, IntMatrix, SmithForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Cancels adjacent inverse pairs with a stack pass.
pub fn free_reduce(letters: &[Letter]) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word { letters: out }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        free_reduce(&letters)
    }

    pub fn generator(i: usize) -> Self {
        Word {
            letters: vec![Letter::new(i, false)],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.letters.clone();
        v.extend_from_slice(&other.letters);
        free_reduce(&v)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Self {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Cyclic rotation by `k` letters (not reduced cyclically).
    pub fn rotate(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let mut v = self.letters.clone();
        v.rotate_left(k % self.letters.len());
        free_reduce(&v)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut v = vec![0; num_generators];
        for l in &self.letters {
            v[l.generator] += l.sign();
        }
        v
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = &self.names[l.generator];
            let exp = run as i64 * l.sign();
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

/// The JSON form `{generators: [names], relators: [strings]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !parse::is_identifier(g) {
                return Err(Error::InvalidInput(format!("bad generator name {g:?}")));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidInput(format!("duplicate generator {g:?}")));
            }
        }
        let relators = relators
            .into_iter()
            .map(|w| {
                if let Some(l) = w.letters.iter().find(|l| l.generator >= generators.len()) {
                    return Err(Error::GeneratorOutOfRange {
                        index: l.generator,
                        count: generators.len(),
                    });
                }
                Ok(free_reduce(&w.letters))
            })
            .collect::<Result<_>>()?;
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Parses `< g1, g2, ... | w1, w2, ... >`.
    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_presentation(text)
    }

    pub fn from_spec(spec: &PresentationSpec) -> Result<Self> {
        let relators = spec
            .relators
            .iter()
            .map(|r| parse::parse_word(r, &spec.generators))
            .collect::<Result<_>>()?;
        Presentation::new(spec.generators.clone(), relators)
    }

    /// Accepts either the bracket grammar or the JSON form.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let spec: PresentationSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
                offset: json_offset(text, e.line(), e.column()),
                message: e.to_string(),
            })?;
            Presentation::from_spec(&spec)
        } else {
            Presentation::parse(text)
        }
    }

    pub fn to_spec(&self) -> PresentationSpec {
        PresentationSpec {
            generators: self.generators.clone(),
            relators: self
                .relators
                .iter()
                .map(|w| w.display(&self.generators).to_string())
                .collect(),
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Free group on `n` generators `x1..xn`.
    pub fn free(n: usize) -> Self {
        Presentation::new((1..=n).map(|i| format!("x{i}")).collect(), vec![]).unwrap()
    }

    /// Surface group `< a1, b1, ..., ag, bg | [a1,b1]...[ag,bg] >`.
    pub fn surface(genus: usize) -> Self {
        let mut names = vec![];
        let mut rel = Word::identity();
        for i in 0..genus {
            names.push(format!("a{}", i + 1));
            names.push(format!("b{}", i + 1));
            rel = rel.concat(&Word::commutator(
                &Word::generator(2 * i),
                &Word::generator(2 * i + 1),
            ));
        }
        let relators = if genus == 0 { vec![] } else { vec![rel] };
        Presentation::new(names, relators).unwrap()
    }

    /// Relator-wise exponent sums, one row per relator.
    pub fn exponent_sum_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|w| w.exponent_sums(self.num_generators()))
            .collect()
    }
}

fn json_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    before + column.saturating_sub(1)
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(", "))?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|w| w.display(&self.generators).to_string())
            .collect();
        if rels.is_empty() {
            f.write_str(">")
        } else {
            write!(f, " {}>", rels.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Letter {
        Letter::new(0, false)
    }
    fn y() -> Letter {
        Letter::new(1, false)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(free_reduce(&[x(), x().inv(), y()]).letters(), &[y()]);
        assert!(free_reduce(&[]).is_empty());
        let gx = Word::generator(0);
        assert!(Word::commutator(&gx, &gx).is_empty());
    }

    #[test]
    fn powers_and_inverses() {
        let w = Word::from_letters(vec![x(), y()]);
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.pow(-2), w.inverse().concat(&w.inverse()));
        assert!(w.pow(0).is_empty());
    }

    #[test]
    fn out_of_range_relator() {
        let err = Presentation::new(vec!["x".into()], vec![Word::generator(1)]).unwrap_err();
        assert_eq!(err, Error::GeneratorOutOfRange { index: 1, count: 1 });
    }

    #[test]
    fn duplicate_generators_rejected() {
        assert!(Presentation::new(vec!["x".into(), "x".into()], vec![]).is_err());
    }

    #[test]
    fn display_groups_powers() {
        let p = Presentation::parse("<x, y | x x x y^-1 y^-1>").unwrap();
        assert_eq!(p.to_string(), "<x, y | x^3 y^-2>");
        assert_eq!(Presentation::free(1).to_string(), "<x1 |>");
    }

    #[test]
    fn surface_relator() {
        let s = Presentation::surface(2);
        assert_eq!(s.num_generators(), 4);
        assert_eq!(s.relators()[0].len(), 8);
        assert_eq!(s.exponent_sum_matrix(), vec![vec![0, 0, 0, 0]]);
    }
}
