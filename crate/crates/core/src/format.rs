//! Shared text and JSON encodings for sparse linear combinations.
//!
//! Text form is `c*X[i,j,...] + ...` where `X` names the basis; JSON form is
//! `{"basis": "...", "terms": [{"index": [...], "coeff": "num/den"}]}` with every
//! coefficient written as an exact fraction string.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub index: Vec<u64>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub basis: String,
    pub terms: Vec<TermJson>,
}

/// `num/den` with the denominator always present.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(0, format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(0, format!("bad denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::parse(0, format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Renders `Σ c * label` with ` + ` / ` - ` separators. An empty label stands
/// for the constant monomial. The empty sum prints as `0`.
pub(crate) fn write_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a BigRational, String)>,
{
    let mut out = String::new();
    for (coeff, label) in terms {
        let negative = coeff.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = coeff.abs();
        if label.is_empty() {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{magnitude}*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn bracket_list<T: std::fmt::Display>(items: &[T]) -> String {
    let inner: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// Parses `c*X[i,j] + d*X[k] - X[] + 3` style expressions for basis letter `X`.
/// A bare rational is returned with an empty index (the constant monomial).
pub fn parse_linear_combination(input: &str, basis: char) -> Result<Vec<(BigRational, Vec<u64>)>> {
    Parser {
        src: input.as_bytes(),
        pos: 0,
        basis: basis as u8,
    }
    .expression()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    basis: u8,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn expression(&mut self) -> Result<Vec<(BigRational, Vec<u64>)>> {
        let mut out = Vec::new();
        let mut sign = BigRational::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        loop {
            let (c, idx) = self.term()?;
            out.push((sign.clone() * c, idx));
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                Some(other) => {
                    return Err(Error::parse(
                        self.pos,
                        format!("unexpected character '{}'", other as char),
                    ))
                }
            }
        }
    }

    fn term(&mut self) -> Result<(BigRational, Vec<u64>)> {
        match self.peek() {
            Some(c) if c == self.basis => Ok((BigRational::one(), self.atom()?)),
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.rational()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok((coeff, self.atom()?))
                } else {
                    Ok((coeff, Vec::new()))
                }
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("expected a term, found '{}'", c as char),
            )),
            None => Err(Error::parse(
                self.pos,
                "expected a term, found end of input",
            )),
        }
    }

    fn unsigned(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let start = self.pos;
        let num: BigInt = self.unsigned()?.parse().expect("digits");
        let den: BigInt = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.unsigned()?.parse().expect("digits")
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return Err(Error::parse(start, "zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    fn atom(&mut self) -> Result<Vec<u64>> {
        self.expect(self.basis)?;
        self.expect(b'[')?;
        let mut idx = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(idx);
        }
        loop {
            let at = self.pos;
            let v: u64 = self
                .unsigned()?
                .parse()
                .map_err(|_| Error::parse(at, "index too large"))?;
            idx.push(v);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(idx);
                }
                _ => return Err(Error::parse(self.pos, "expected ',' or ']'")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_mixed_expression() {
        let terms = parse_linear_combination("1/6*F[0,1,2] - F[2,1,0] + 3", 'F').unwrap();
        assert_eq!(
            terms,
            vec![
                (q(1, 6), vec![0, 1, 2]),
                (q(-1, 1), vec![2, 1, 0]),
                (q(3, 1), vec![]),
            ]
        );
    }

    #[test]
    fn parse_error_reports_position() {
        let err = parse_linear_combination("F[1,0] * ", 'F').unwrap_err();
        assert!(matches!(err, Error::Parse { position: 7, .. }), "{err:?}");
        assert!(parse_linear_combination("", 'p').is_err());
        assert!(parse_linear_combination("1/0", 'p').is_err());
    }

    #[test]
    fn renders_signs_and_units() {
        let a = q(1, 2);
        let b = q(-1, 1);
        let c = q(-3, 1);
        let s = write_terms(vec![
            (&a, "p[1,1]".to_string()),
            (&b, "p[2]".to_string()),
            (&c, String::new()),
        ]);
        assert_eq!(s, "1/2*p[1,1] - p[2] - 3");
        assert_eq!(write_terms(Vec::<(&BigRational, String)>::new()), "0");
        assert_eq!(rational_to_string(&q(4, 2)), "2/1");
        assert_eq!(rational_from_str("-3/6").unwrap(), q(-1, 2));
    }
}
