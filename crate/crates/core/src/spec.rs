//! Ring-spec mini-language.
//!
//! ```text
//! spec := atom ("x" atom)*
//! atom := "Z" INT | "M" INT "(" spec ")" | "T" INT "(" spec ")" | "GT(" INT "," INT "," INT ")"
//! ```
//!
//! Products associate to the left: `Z2xZ2xZ4` is `(Z2 x Z2) x Z4`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{FiniteRing, RingBuilder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Zmod(usize),
    Product(Box<RingSpec>, Box<RingSpec>),
    Matrix(usize, Box<RingSpec>),
    Upper(usize, Box<RingSpec>),
    GenTriangular(usize, usize, usize),
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(m) => write!(f, "Z{m}"),
            RingSpec::Product(a, b) => write!(f, "{a}x{b}"),
            RingSpec::Matrix(n, s) => write!(f, "M{n}({s})"),
            RingSpec::Upper(n, s) => write!(f, "T{n}({s})"),
            RingSpec::GenTriangular(s, r, m) => write!(f, "GT({s},{r},{m})"),
        }
    }
}

impl RingSpec {
    /// Element count, saturating; lets callers refuse oversized specs before building.
    pub fn size_hint(&self) -> u128 {
        match self {
            RingSpec::Zmod(m) => *m as u128,
            RingSpec::Product(a, b) => a.size_hint().saturating_mul(b.size_hint()),
            RingSpec::Matrix(n, s) => pow_sat(s.size_hint(), n * n),
            RingSpec::Upper(n, s) => pow_sat(s.size_hint(), n * (n + 1) / 2),
            RingSpec::GenTriangular(s, r, m) => (*s as u128) * (*r as u128) * (*m as u128),
        }
    }

    pub fn build(&self, builder: &RingBuilder) -> Result<FiniteRing> {
        let requested = self.size_hint();
        if requested > builder.cap() as u128 {
            return Err(Error::SizeLimit {
                requested,
                cap: builder.cap(),
            });
        }
        match self {
            RingSpec::Zmod(m) => builder.zmod(*m),
            RingSpec::Product(a, b) => builder.product(a.build(builder)?, b.build(builder)?),
            RingSpec::Matrix(n, s) => builder.matrix(Arc::new(s.build(builder)?), *n),
            RingSpec::Upper(n, s) => builder.upper_triangular(Arc::new(s.build(builder)?), *n),
            RingSpec::GenTriangular(s, r, m) => builder.generalized_triangular(*s, *r, *m),
        }
    }
}

fn pow_sat(b: u128, e: usize) -> u128 {
    (0..e).fold(1u128, |acc, _| acc.saturating_mul(b))
}

pub fn parse_ring_spec(input: &str) -> Result<RingSpec> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        src: &compact,
        orig: input,
        pos: 0,
    };
    let spec = p.spec()?;
    if p.pos != compact.len() {
        return Err(p.err("trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    src: &'a str,
    orig: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::parse(self.orig, self.pos, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {lit:?}")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn spec(&mut self) -> Result<RingSpec> {
        let mut lhs = self.atom()?;
        while self.eat("x") {
            let rhs = self.atom()?;
            lhs = RingSpec::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<RingSpec> {
        if self.eat("GT(") {
            let s = self.int()?;
            self.expect(",")?;
            let r = self.int()?;
            self.expect(",")?;
            let m = self.int()?;
            self.expect(")")?;
            return Ok(RingSpec::GenTriangular(s, r, m));
        }
        match self.peek() {
            Some(b'Z') => {
                self.pos += 1;
                Ok(RingSpec::Zmod(self.int()?))
            }
            Some(c @ (b'M' | b'T')) => {
                self.pos += 1;
                let n = self.int()?;
                self.expect("(")?;
                let inner = self.spec()?;
                self.expect(")")?;
                Ok(if c == b'M' {
                    RingSpec::Matrix(n, Box::new(inner))
                } else {
                    RingSpec::Upper(n, Box::new(inner))
                })
            }
            _ => Err(self.err("expected Z, M, T or GT")),
        }
    }
}
