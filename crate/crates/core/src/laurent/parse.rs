//! Text form: a signed sum of `c*t1^a1*...*tn^an` terms, `^-k` allowed.
//! With a single variable the bare name `t` is used.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

fn var_name(num_vars: usize, i: usize) -> String {
    if num_vars == 1 {
        "t".to_string()
    } else {
        format!("t{}", i + 1)
    }
}

pub(super) fn write_poly(p: &LaurentPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let abs = c.abs();
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(i, &a)| {
                let name = var_name(p.num_vars(), i);
                if a == 1 {
                    name
                } else {
                    format!("{name}^{a}")
                }
            })
            .collect();
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            f.write_str(&factors.join("*"))?;
        } else {
            write!(f, "{abs}*{}", factors.join("*"))?;
        }
    }
    Ok(())
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }
}

pub(super) fn parse_poly(text: &str, num_vars: usize) -> Result<LaurentPoly> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut out = LaurentPoly::zero(num_vars);
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            None if first => return Err(Error::parse(cur.pos, "empty polynomial")),
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                1
            }
            Some(b'-') => {
                cur.pos += 1;
                -1
            }
            Some(_) if first => 1,
            Some(_) => return Err(Error::parse(cur.pos, "expected '+' or '-'")),
        };
        first = false;
        let (exps, coeff) = parse_term(&mut cur, num_vars)?;
        out.add_term(exps, coeff * sign);
    }
    Ok(out)
}

fn parse_term(cur: &mut Cursor<'_>, num_vars: usize) -> Result<(Vec<i64>, BigInt)> {
    let mut exps = vec![0i64; num_vars];
    let mut coeff = BigInt::one();
    loop {
        match cur.peek() {
            Some(b) if b.is_ascii_digit() => {
                let d = cur.digits().unwrap();
                coeff *= d.parse::<BigInt>().unwrap();
            }
            Some(b't') => {
                let at = cur.pos;
                cur.pos += 1;
                let idx = match cur.digits() {
                    Some(d) => {
                        let k: usize = d
                            .parse()
                            .map_err(|_| Error::parse(at, "bad variable index"))?;
                        if k == 0 || k > num_vars {
                            return Err(Error::parse(
                                at,
                                format!("variable t{k} out of range for {num_vars} variables"),
                            ));
                        }
                        k - 1
                    }
                    None if num_vars == 1 => 0,
                    None => {
                        return Err(Error::parse(at, "bare 't' is only valid with one variable"))
                    }
                };
                let mut power = 1i64;
                if cur.eat(b'^') {
                    let neg = if cur.eat(b'-') {
                        true
                    } else {
                        cur.eat(b'+');
                        false
                    };
                    cur.skip_ws();
                    let at = cur.pos;
                    let d = cur
                        .digits()
                        .ok_or_else(|| Error::parse(at, "malformed exponent"))?;
                    power = d
                        .parse()
                        .map_err(|_| Error::parse(at, "exponent out of range"))?;
                    if neg {
                        power = -power;
                    }
                }
                exps[idx] += power;
            }
            _ => return Err(Error::parse(cur.pos, "expected a coefficient or variable")),
        }
        if !cur.eat(b'*') {
            break;
        }
    }
    if coeff.is_zero() {
        exps.iter_mut().for_each(|a| *a = 0);
    }
    Ok((exps, coeff))
}

pub(super) fn infer_num_vars(text: &str) -> Result<usize> {
    let b = text.as_bytes();
    let mut n = 0usize;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b't' {
            let start = i + 1;
            let mut j = start;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let k = if j > start {
                text[start..j]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(i, "bad variable index"))?
            } else {
                1
            };
            n = n.max(k);
            i = j;
        } else {
            i += 1;
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        let p = LaurentPoly::parse("1 - t + t^2", 1).unwrap();
        assert_eq!(p.to_string(), "t^2 - t + 1");
        let q = LaurentPoly::parse("-2*t1^-1*t2 + 3 + t2^-4", 2).unwrap();
        assert_eq!(q.to_string(), "3 + t2^-4 - 2*t1^-1*t2");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
        assert_eq!(LaurentPoly::constant(0, -7).to_string(), "-7");
    }

    #[test]
    fn parse_accepts_indexed_single_variable() {
        let a = LaurentPoly::parse("t1^2 - 1", 1).unwrap();
        let b = LaurentPoly::parse("t^2-1", 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match LaurentPoly::parse("t1 + t3", 2) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(LaurentPoly::parse("t^", 1).is_err());
        assert!(LaurentPoly::parse("t + 1", 2).is_err());
        assert!(LaurentPoly::parse("", 1).is_err());
        assert!(LaurentPoly::parse("t t", 1).is_err());
    }

    #[test]
    fn infer() {
        assert_eq!("t^2 - t + 1".parse::<LaurentPoly>().unwrap().num_vars(), 1);
        assert_eq!("t3 - 1".parse::<LaurentPoly>().unwrap().num_vars(), 3);
        assert_eq!("5".parse::<LaurentPoly>().unwrap().num_vars(), 0);
    }

    #[test]
    fn repeated_factors_multiply() {
        let p = LaurentPoly::parse("2*t1*3*t1^-3", 1).unwrap();
        assert_eq!(p.to_string(), "6*t^-2");
    }
}
