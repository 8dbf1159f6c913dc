//! Presentation grammar:
//!
//! ```text
//! presentation := '<' [ident (',' ident)*] '|' [relation (',' relation)*] '>'
//! relation     := word ['=' word]
//! word         := atom*
//! atom         := base ['^' int]
//! base         := ident | '1' | '[' word ',' word ']' | '(' word ')'
//! ```
//!
//! `[u, v]` is `u v u^-1 v^-1` and nests. `u = v` is the relator `u v^-1`.
//! An identifier that is not a generator name but spells a string of
//! single-letter generators is read letter by letter, so `xyx` works when
//! `x` and `y` are generators.

use super::{Presentation, Word};
use crate::error::{Error, Result};

pub(super) fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    gens: &'a [String],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => Err(Error::parse(
                self.pos,
                format!("expected '{c}', found '{d}'"),
            )),
            None => Err(Error::parse(
                self.pos,
                format!("expected '{c}', found end of input"),
            )),
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| {
                c.is_ascii_alphabetic() || c == '_' || (i > 0 && c.is_ascii_digit())
            })
            .map(|(i, c)| i + c.len_utf8())
            .last()?;
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut len = 0;
        if rest.starts_with('-') || rest.starts_with('+') {
            len = 1;
        }
        let digits = rest[len..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(start, "malformed exponent"));
        }
        len += digits;
        self.pos += len;
        rest[..len]
            .trim_start_matches('+')
            .parse()
            .map_err(|_| Error::parse(start, "exponent out of range"))
    }

    fn generator_word(&self, at: usize, name: &str) -> Result<Word> {
        if let Some(i) = self.gens.iter().position(|g| g == name) {
            return Ok(Word::generator(i));
        }
        let mut w = Word::identity();
        for c in name.chars() {
            let mut buf = [0u8; 4];
            let s: &str = c.encode_utf8(&mut buf);
            let i = self
                .gens
                .iter()
                .position(|g| g == s)
                .ok_or_else(|| Error::parse(at, format!("unknown generator '{name}'")))?;
            w = w.concat(&Word::generator(i));
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<Option<Word>> {
        let base = match self.peek() {
            Some('[') => {
                let open = self.pos;
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                if self.peek() != Some(']') {
                    return Err(Error::parse(open, "unbalanced '['"));
                }
                self.pos += 1;
                Word::commutator(&u, &v)
            }
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let u = self.word()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse(open, "unbalanced '('"));
                }
                self.pos += 1;
                u
            }
            Some('1') => {
                self.pos += 1;
                Word::identity()
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let (at, name) = self.ident().unwrap();
                self.generator_word(at, name)?
            }
            _ => return Ok(None),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            Ok(Some(base.pow(k)))
        } else {
            Ok(Some(base))
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::identity();
        while let Some(a) = self.atom()? {
            w = w.concat(&a);
        }
        Ok(w)
    }

    fn relation(&mut self) -> Result<Word> {
        let start = self.pos;
        let lhs = self.word()?;
        let w = if self.peek() == Some('=') {
            self.pos += 1;
            let rhs = self.word()?;
            lhs.concat(&rhs.inverse())
        } else {
            lhs
        };
        if self.pos == start {
            self.skip_ws();
        }
        Ok(w)
    }
}

pub(super) fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut names: Vec<String> = vec![];
    let mut p = Parser {
        src: text,
        pos: 0,
        gens: &[],
    };
    p.expect('<')?;
    if p.peek() != Some('|') {
        loop {
            let at = p.pos;
            let (_, name) = p
                .ident()
                .ok_or_else(|| Error::parse(at, "expected a generator name"))?;
            if names.iter().any(|n| n == name) {
                return Err(Error::parse(at, format!("duplicate generator '{name}'")));
            }
            names.push(name.to_string());
            if p.peek() == Some(',') {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect('|')?;
    let after_bar = p.pos;
    let mut rels = vec![];
    let mut q = Parser {
        src: text,
        pos: after_bar,
        gens: &names,
    };
    if q.peek() != Some('>') {
        loop {
            let before = q.pos;
            let w = q.relation()?;
            let consumed = text[before..q.pos].trim();
            if consumed.is_empty() {
                return Err(Error::parse(q.pos, "expected a relator"));
            }
            rels.push(w);
            if q.peek() == Some(',') {
                q.pos += 1;
            } else {
                break;
            }
        }
    }
    q.expect('>')?;
    if q.peek().is_some() {
        return Err(Error::parse(q.pos, "trailing input after '>'"));
    }
    Presentation::new(names, rels)
}

pub(super) fn parse_word(text: &str, gens: &[String]) -> Result<Word> {
    let mut p = Parser {
        src: text,
        pos: 0,
        gens,
    };
    let w = p.relation()?;
    if p.peek().is_some() {
        return Err(Error::parse(p.pos, "unexpected character in relator"));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Letter;

    fn letters(w: &Word) -> Vec<(usize, i64)> {
        w.letters()
            .iter()
            .map(|l| (l.generator, l.sign()))
            .collect()
    }

    #[test]
    fn commutator_sugar() {
        let p = Presentation::parse("<x, y | [x,y]>").unwrap();
        assert_eq!(p.generators(), &["x".to_string(), "y".to_string()]);
        assert_eq!(
            letters(&p.relators()[0]),
            vec![(0, 1), (1, 1), (0, -1), (1, -1)]
        );
    }

    #[test]
    fn trefoil_relator() {
        let p = Presentation::parse("<x, y | x y x y^-1 x^-1 y^-1>").unwrap();
        let q = Presentation::parse("<x,y|xyx = yxy>").unwrap();
        assert_eq!(p, q);
        assert_eq!(
            letters(&p.relators()[0]),
            vec![(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]
        );
    }

    #[test]
    fn free_group_without_relators() {
        let p = Presentation::parse("<x | >").unwrap();
        assert_eq!(p.num_generators(), 1);
        assert!(p.relators().is_empty());
        let e = Presentation::parse("< | >").unwrap();
        assert_eq!(e.num_generators(), 0);
    }

    #[test]
    fn nested_commutators_and_powers() {
        let p = Presentation::parse("<a, b, c | [[a, b], c^2], (a b)^-2>").unwrap();
        let ab = Word::from_letters(vec![Letter::new(0, false), Letter::new(1, false)]);
        let c2 = Word::generator(2).pow(2);
        assert_eq!(
            p.relators()[0],
            Word::commutator(
                &Word::commutator(&Word::generator(0), &Word::generator(1),),
                &c2
            )
        );
        assert_eq!(p.relators()[1], ab.pow(-2));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = Presentation::parse("<x,y|[x,y]>").unwrap();
        let b = Presentation::parse("  <  x ,\n y |  [ x , y ]  >  ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_report_offsets() {
        match Presentation::parse("<x, y | x z>") {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 10);
                assert!(message.contains("unknown generator"));
            }
            other => panic!("{other:?}"),
        }
        match Presentation::parse("<x | x^>") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("{other:?}"),
        }
        match Presentation::parse("<x, y | [x, y>") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("{other:?}"),
        }
        assert!(Presentation::parse("<x, y | x y").is_err());
        assert!(Presentation::parse("<x | x> junk").is_err());
        assert!(Presentation::parse("<x, x | >").is_err());
    }

    #[test]
    fn json_form() {
        let p = Presentation::parse_any(r#"{"generators": ["x", "y"], "relators": ["[x,y]"]}"#)
            .unwrap();
        assert_eq!(p, Presentation::parse("<x, y | [x, y]>").unwrap());
        assert!(Presentation::parse_any(r#"{"generators": ["x"], "relators": ["y"]}"#).is_err());
        assert!(matches!(
            Presentation::parse_any("{\"generators\": [\"x\"],\n \"relators\": 3}"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn trivial_relator_prints_and_parses() {
        let p = Presentation::parse("<x | x x^-1>").unwrap();
        assert_eq!(p.to_string(), "<x | 1>");
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
    }
}
