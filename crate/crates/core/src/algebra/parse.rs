//! Text format: sums of terms `c*X1^a1*...*Xn^an`. The coefficient and
//! `^1` may be omitted; whitespace is ignored.

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::RingRef;
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
    line: usize,
    col_offset: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        let byte = self.chars.get(self.pos).map_or(self.src.len(), |&(b, _)| b);
        self.col_offset + self.src[..byte].chars().count() + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        s.parse::<u64>().map_err(|_| {
            self.pos = start;
            self.error("number out of range")
        })
    }

    fn name(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos].1;
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect()
    }
}

pub fn parse_polynomial(ring: &RingRef, src: &str) -> Result<Polynomial> {
    parse_polynomial_at(ring, src, 1, 0)
}

/// Like [`parse_polynomial`], reporting errors at `line` with columns shifted
/// by `col_offset` (for polynomials embedded in larger files).
pub fn parse_polynomial_at(
    ring: &RingRef,
    src: &str,
    line: usize,
    col_offset: usize,
) -> Result<Polynomial> {
    let field = ring.field();
    let n = ring.nvars();
    let mut cur = Cursor {
        chars: src.char_indices().collect(),
        pos: 0,
        src,
        line,
        col_offset,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(cur.error("empty polynomial")),
            None => break,
            Some('+') => cur.pos += 1,
            Some('-') => {
                negative = true;
                cur.pos += 1
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.error(format!("unexpected character {c:?}"))),
        }
        first = false;

        let mut coeff = 1u32;
        let mut exps = vec![0u16; n];
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = cur.number()?;
                    coeff = field.mul(coeff, field.from_u64(v));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = cur.pos;
                    let name = cur.name();
                    let Some(idx) = ring.var_index(&name) else {
                        cur.pos = start;
                        return Err(cur.error(format!("unknown variable {name:?}")));
                    };
                    let mut e = 1u64;
                    if cur.peek() == Some('^') {
                        cur.pos += 1;
                        e = cur.number()?;
                    }
                    let total = exps[idx] as u64 + e;
                    if total > u16::MAX as u64 {
                        return Err(cur.error("exponent too large"));
                    }
                    exps[idx] = total as u16;
                }
                Some(c) => return Err(cur.error(format!("unexpected character {c:?}"))),
                None => return Err(cur.error("unexpected end of input")),
            }
            if cur.peek() == Some('*') {
                cur.pos += 1;
            } else {
                break;
            }
        }
        if negative {
            coeff = field.neg(coeff);
        }
        terms.push((Monomial::new(&exps, ring.grading()), coeff));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PolyRing, PrimeField};

    #[test]
    fn omissions_and_signs() {
        let r = PolyRing::standard(PrimeField::default(), 2);
        let a = parse_polynomial(&r, "-X1^2 + 2*X1*X2 - 3").unwrap();
        let b = parse_polynomial(&r, "65520*X1^2+2*X1^1*X2^1+65518").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            parse_polynomial(&r, "X1*X1").unwrap(),
            parse_polynomial(&r, "X1^2").unwrap()
        );
        assert!(parse_polynomial(&r, "0").unwrap().is_zero());
    }

    #[test]
    fn error_positions() {
        let r = PolyRing::standard(PrimeField::default(), 2);
        match parse_polynomial(&r, "X1 + Y2") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_polynomial_at(&r, "X1 +", 4, 10) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 15)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial(&r, "").is_err());
        assert!(parse_polynomial(&r, "X1 X2").is_err());
    }
}
