//! Ring descriptors, exact element arithmetic and finiteness predicates.
//!
//! Rings come from a small closed grammar:
//!
//! ```text
//! Z<m>        integers modulo m (m >= 2)
//! GF<p>       prime field (p prime)
//! Q           exact rationals
//! M<k>(<r>)   k x k matrices over r (k >= 1)
//! J(<f>)      Jacobson algebra f<x,y>/(xy - 1) over a field f (GF<p> or Q)
//! ```
//!
//! Whitespace is ignored and names are case-sensitive. [`Ring`] values print
//! back in the same grammar, so `parse_ring(r.to_string()) == r`.

mod element;
mod enumerate;
mod finiteness;
mod rational;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use element::{Element, Value};
pub use enumerate::{enumerate, index_of, FiniteTable};
pub use finiteness::{
    check_capacity_violation_witness, check_star_star_witness, is_dedekind_finite, is_k_stable,
    left_inverses, right_inverses, theorem1_battery, BatteryReport, Condition, ConditionVerdict,
};
pub use rational::Rational;

/// A ring from the closed grammar described in the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    IntegersMod(u64),
    PrimeField(u64),
    Rationals,
    Matrix { size: usize, base: Box<Ring> },
    Jacobson(Box<Ring>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn integers_mod(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::ModulusTooSmall(m));
        }
        Ok(Ring::IntegersMod(m))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn matrix(size: usize, base: Ring) -> Result<Self> {
        if size == 0 {
            return Err(Error::ZeroMatrixSize);
        }
        Ok(Ring::Matrix {
            size,
            base: Box::new(base),
        })
    }

    pub fn jacobson(base: Ring) -> Result<Self> {
        if !base.is_field() {
            return Err(Error::JacobsonBase(base));
        }
        Ok(Ring::Jacobson(Box::new(base)))
    }

    /// True for `GF<p>` and `Q`, the only fields of the grammar we treat as such.
    pub fn is_field(&self) -> bool {
        matches!(self, Ring::PrimeField(_) | Ring::Rationals)
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Ring::IntegersMod(_) | Ring::PrimeField(_) => true,
            Ring::Rationals | Ring::Jacobson(_) => false,
            Ring::Matrix { base, .. } => base.is_finite(),
        }
    }

    /// Number of elements, or `None` for infinite rings. Saturates at
    /// `u128::MAX` for rings too large to count.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            Ring::IntegersMod(m) | Ring::PrimeField(m) => Some(*m as u128),
            Ring::Rationals | Ring::Jacobson(_) => None,
            Ring::Matrix { size, base } => {
                let b = base.cardinality()?;
                let exp = (*size as u32).saturating_mul(*size as u32);
                Some(b.checked_pow(exp).unwrap_or(u128::MAX))
            }
        }
    }

    /// Checks that the ring is finite with at most `cap` elements.
    pub fn require_within(&self, cap: u128) -> Result<usize> {
        let card = self
            .cardinality()
            .ok_or_else(|| Error::InfiniteRing(self.clone()))?;
        if card > cap || card > usize::MAX as u128 {
            return Err(Error::CapExceeded {
                ring: self.clone(),
                required: card,
                cap,
            });
        }
        Ok(card as usize)
    }
}

pub fn parse_ring(spec: &str) -> Result<Ring> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser {
        spec,
        src: compact.as_bytes(),
        pos: 0,
    };
    let ring = parser.ring()?;
    if parser.pos != parser.src.len() {
        return Err(parser.fail("trailing characters"));
    }
    Ok(ring)
}

pub fn format_ring(ring: &Ring) -> String {
    ring.to_string()
}

struct Parser<'a> {
    spec: &'a str,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, reason: &str) -> Error {
        Error::RingSpec {
            spec: self.spec.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("expected digits"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.fail("number too large"))
    }

    fn ring(&mut self) -> Result<Ring> {
        if self.eat("GF") {
            Ring::prime_field(self.number()?)
        } else if self.eat("Z") {
            Ring::integers_mod(self.number()?)
        } else if self.eat("Q") {
            Ok(Ring::Rationals)
        } else if self.eat("M") {
            let size = self.number()?;
            self.expect("(")?;
            let base = self.ring()?;
            self.expect(")")?;
            let size = usize::try_from(size).map_err(|_| self.fail("matrix size too large"))?;
            Ring::matrix(size, base)
        } else if self.eat("J") {
            self.expect("(")?;
            let base = self.ring()?;
            self.expect(")")?;
            Ring::jacobson(base)
        } else {
            Err(self.fail("expected one of Z, GF, Q, M, J"))
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ring(s)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::IntegersMod(m) => write!(f, "Z{m}"),
            Ring::PrimeField(p) => write!(f, "GF{p}"),
            Ring::Rationals => write!(f, "Q"),
            Ring::Matrix { size, base } => write!(f, "M{size}({base})"),
            Ring::Jacobson(base) => write!(f, "J({base})"),
        }
    }
}
