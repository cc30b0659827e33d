//! Laurent polynomial text: terms joined by `+`/`-`; a term is `coeff`,
//! `coeff*mon` or `mon`; `mon` is `x<i>^<e>` factors joined by `*`.
//! Coefficients are integers or fractions `p/q`; exponents may be negative.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{IntVector, Rational};
use crate::polytope::LaurentPolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at position {}: expected {}, found {}",
            self.position,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::InvalidPolynomial(e.to_string())
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type Monomial = Vec<(usize, BigInt)>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        ParseError {
            position: self.pos,
            expected: expected.to_vec(),
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn number(&mut self, what: &'static str) -> Result<BigInt, ParseError> {
        self.skip_ws();
        match self.digits() {
            Some(d) => Ok(d.parse().expect("ascii digits")),
            None => Err(self.error(&[what])),
        }
    }

    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        let p = self.number("a coefficient")?;
        if self.eat('/') {
            let at = self.pos;
            let q = self.number("a denominator")?;
            if q.is_zero() {
                return Err(ParseError {
                    position: at,
                    expected: vec!["a nonzero denominator"],
                    found: "0".into(),
                });
            }
            return Ok(Rational::new(p, q));
        }
        Ok(Rational::from_integer(p))
    }

    fn factor(&mut self) -> Result<(usize, BigInt), ParseError> {
        self.skip_ws();
        if self.peek() != Some('x') {
            return Err(self.error(&["a variable x<i>"]));
        }
        self.pos += 1;
        let at = self.pos;
        let index = match self.digits() {
            Some(d) => d.parse::<usize>().ok().filter(|&i| i >= 1),
            None => None,
        };
        let Some(index) = index else {
            self.pos = at;
            return Err(self.error(&["a variable index 1, 2, ..."]));
        };
        let mut exponent = BigInt::one();
        if self.eat('^') {
            self.skip_ws();
            let negative = self.peek() == Some('-');
            if negative {
                self.pos += 1;
            }
            let e = self.number("an integer exponent")?;
            exponent = if negative { -e } else { e };
        }
        Ok((index, exponent))
    }

    fn monomial(&mut self) -> Result<Monomial, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn term(&mut self) -> Result<(Rational, Monomial), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coefficient()?;
                if self.eat('*') {
                    Ok((c, self.monomial()?))
                } else {
                    Ok((c, Vec::new()))
                }
            }
            Some('x') => Ok((Rational::one(), self.monomial()?)),
            _ => Err(self.error(&["a coefficient", "a variable x<i>"])),
        }
    }

    fn polynomial(&mut self) -> Result<Vec<(Rational, Monomial)>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let (c, m) = self.term()?;
            terms.push((if negative { -c } else { c }, m));
            self.skip_ws();
            match self.peek() {
                None => return Ok(terms),
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return Err(self.error(&["'+'", "'-'", "'*'", "end of input"])),
            }
            self.pos += 1;
        }
    }
}

/// Parses a Laurent polynomial. The number of variables is `nvars` when
/// given, otherwise the largest variable index used.
pub fn parse_polynomial(src: &str, nvars: Option<usize>) -> Result<LaurentPolynomial, Error> {
    let mut p = Parser { src, pos: 0 };
    let terms = p.polynomial()?;
    let used = terms
        .iter()
        .flat_map(|(_, m)| m.iter().map(|(i, _)| *i))
        .max()
        .unwrap_or(0);
    let n = match nvars {
        Some(n) if used > n => {
            return Err(Error::InvalidPolynomial(format!(
                "variable x{used} used but only {n} variables declared"
            )))
        }
        Some(n) => n,
        None => used.max(1),
    };
    let terms = terms
        .into_iter()
        .map(|(c, m)| {
            let mut e = vec![BigInt::zero(); n];
            for (i, x) in m {
                e[i - 1] += x;
            }
            (IntVector::new(e), c)
        })
        .collect();
    LaurentPolynomial::new(n, terms)
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s, None)
    }
}
