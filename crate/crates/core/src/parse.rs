//! Polynomial text and JSON input.
//!
//! Text grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! poly   := ["+"|"-"] term (("+"|"-") term)*
//! term   := coeff "*" factor ("*" factor)* | factor ("*" factor)* | coeff
//! factor := "x" INDEX ["^" POSINT]
//! coeff  := INT | INT "/" POSINT
//! ```
//!
//! A bare `coeff` is accepted as a constant term so that every support
//! serializes to something the parser reads back.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, PolynomialSupport};

pub const DEFAULT_MAX_EXPONENT: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseOptions {
    pub max_exponent: i64,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            max_exponent: DEFAULT_MAX_EXPONENT,
        }
    }
}

pub fn parse_polynomial(text: &str, dim: usize) -> Result<PolynomialSupport> {
    parse_polynomial_with(text, dim, ParseOptions::default())
}

pub fn parse_polynomial_with(text: &str, dim: usize, opts: ParseOptions) -> Result<PolynomialSupport> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        dim,
        opts,
    };
    let terms = p.poly()?;
    let mut collected: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
    for (exp, c) in terms {
        *collected.entry(exp).or_insert_with(BigRational::zero) += c;
    }
    let terms = collected
        .into_iter()
        .map(|(e, c)| Ok((ExponentVector::new(e)?, c)))
        .collect::<Result<Vec<_>>>()?;
    PolynomialSupport::with_coeffs(dim, terms).map_err(|e| match e {
        Error::EmptySupport => Error::Parse {
            pos: text.len(),
            msg: "all terms cancel; support is empty".into(),
        },
        other => other,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
    opts: ParseOptions,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse::<BigInt>().expect("digit string parses"))
    }

    fn small(&mut self, what: &str, limit: i64) -> Result<i64> {
        let start = self.pos;
        let v = self.digits()?;
        match i64::try_from(&v) {
            Ok(x) if x <= limit => Ok(x),
            _ => {
                self.pos = start;
                self.err(format!("{what} {v} exceeds limit {limit}"))
            }
        }
    }

    fn poly(&mut self) -> Result<Vec<(Vec<i64>, BigRational)>> {
        let mut terms = Vec::new();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (exp, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((exp, c));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(ch) => return self.err(format!("unexpected character '{}'", ch as char)),
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Vec<i64>, BigRational)> {
        let mut exp = vec![0i64; self.dim];
        let mut coeff = BigRational::one();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.digits()?;
                    if d.is_zero() {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    d
                } else {
                    BigInt::one()
                };
                coeff = BigRational::new(num, den);
                if !self.eat(b'*') {
                    return Ok((exp, coeff));
                }
                self.factor(&mut exp)?;
            }
            Some(b'x') => self.factor(&mut exp)?,
            Some(ch) => return self.err(format!("expected term, found '{}'", ch as char)),
            None => return self.err("expected term, found end of input"),
        }
        while self.eat(b'*') {
            self.factor(&mut exp)?;
        }
        Ok((exp, coeff))
    }

    fn factor(&mut self, exp: &mut [i64]) -> Result<()> {
        if !self.eat(b'x') {
            return self.err("expected variable 'x<index>'");
        }
        // the index must follow the 'x' directly
        if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            return self.err("expected variable index after 'x'");
        }
        let at = self.pos;
        let idx = self.small("variable index", i64::MAX)?;
        if idx as usize >= self.dim {
            self.pos = at;
            return self.err(format!(
                "variable x{idx} out of range for dimension {}",
                self.dim
            ));
        }
        let power = if self.eat(b'^') {
            let at = self.pos;
            let k = self.small("exponent", self.opts.max_exponent)?;
            if k == 0 {
                self.pos = at;
                return self.err("exponent must be positive");
            }
            k
        } else {
            1
        };
        let slot = &mut exp[idx as usize];
        *slot += power;
        if *slot > self.opts.max_exponent {
            return self.err(format!("exponent exceeds limit {}", self.opts.max_exponent));
        }
        Ok(())
    }
}

fn format_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(exp: &ExponentVector) -> String {
    exp.coords()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
        .join("*")
}

/// Canonical text form: terms in descending lexicographic exponent order,
/// unit coefficients omitted. Supports without coefficients print every
/// coefficient as 1.
pub fn serialize_polynomial(f: &PolynomialSupport) -> String {
    let mut out = String::new();
    for (k, a) in f.support().iter().rev().enumerate() {
        let c = f
            .coeffs()
            .map(|m| m[a].clone())
            .unwrap_or_else(BigRational::one);
        let mono = format_monomial(a);
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&format_coeff(&mag));
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_coeff(&mag));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exp: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
}

/// `{"dim": n+1, "terms": [{"exp": [...], "coeff": "p/q"}, ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonPolynomial {
    pub dim: usize,
    pub terms: Vec<JsonTerm>,
}

fn parse_coeff(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("malformed coefficient {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl JsonPolynomial {
    pub fn into_support(self, opts: ParseOptions) -> Result<PolynomialSupport> {
        for t in &self.terms {
            if t.exp.iter().any(|&k| k > opts.max_exponent) {
                return Err(Error::InvalidInput(format!(
                    "exponent in {:?} exceeds limit {}",
                    t.exp, opts.max_exponent
                )));
            }
        }
        let with = self.terms.iter().filter(|t| t.coeff.is_some()).count();
        if with == 0 {
            let exps = self
                .terms
                .into_iter()
                .map(|t| ExponentVector::new(t.exp))
                .collect::<Result<Vec<_>>>()?;
            PolynomialSupport::new(self.dim, exps)
        } else if with == self.terms.len() {
            let terms = self
                .terms
                .into_iter()
                .map(|t| {
                    let c = parse_coeff(t.coeff.as_deref().expect("checked above"))?;
                    Ok((ExponentVector::new(t.exp)?, c))
                })
                .collect::<Result<Vec<_>>>()?;
            PolynomialSupport::with_coeffs(self.dim, terms)
        } else {
            Err(Error::InvalidInput(
                "either every term or no term may carry a coefficient".into(),
            ))
        }
    }

    pub fn from_support(f: &PolynomialSupport) -> Self {
        let terms = f
            .support()
            .iter()
            .rev()
            .map(|a| JsonTerm {
                exp: a.coords().to_vec(),
                coeff: f.coeffs().map(|m| format_coeff(&m[a])),
            })
            .collect();
        Self { dim: f.dim(), terms }
    }
}

pub fn parse_json_polynomial(text: &str, opts: ParseOptions) -> Result<PolynomialSupport> {
    let raw: JsonPolynomial =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("polynomial JSON: {e}")))?;
    raw.into_support(opts)
}
