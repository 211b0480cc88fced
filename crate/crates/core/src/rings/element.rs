use std::collections::BTreeMap;
use std::fmt;

use serde_json::Value as Json;

use super::{Rational, Ring};
use crate::error::{Error, Result};

/// Jacobson monomial `y^i x^j`, keyed as `(i, j)`.
pub type Monomial = (u32, u32);

/// Ring-element payload. Which variant is valid is decided by the owning
/// [`Ring`]; arithmetic lives on `Ring` so matrices can share one
/// descriptor across all entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    /// Residue in `[0, m)` for `Z<m>` and `GF<p>`.
    Residue(u64),
    Rational(Rational),
    /// Row-major `k*k` entries of a matrix-ring element.
    Matrix(Vec<Value>),
    /// `sum c * y^i x^j` with every `c` nonzero.
    Jacobson(BTreeMap<Monomial, Value>),
}

/// Product of two Jacobson monomials under the rewrite `x*y -> 1`.
pub fn monomial_product(lhs: Monomial, rhs: Monomial) -> Result<Monomial> {
    let (a, b) = lhs;
    let (c, d) = rhs;
    if b >= c {
        Ok((a, (b - c).checked_add(d).ok_or(Error::Overflow)?))
    } else {
        Ok((a.checked_add(c - b).ok_or(Error::Overflow)?, d))
    }
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

impl Ring {
    pub fn zero(&self) -> Value {
        match self {
            Ring::IntegersMod(_) | Ring::PrimeField(_) => Value::Residue(0),
            Ring::Rationals => Value::Rational(Rational::ZERO),
            Ring::Matrix { size, base } => Value::Matrix(vec![base.zero(); size * size]),
            Ring::Jacobson(_) => Value::Jacobson(BTreeMap::new()),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            Ring::IntegersMod(_) | Ring::PrimeField(_) => Value::Residue(1),
            Ring::Rationals => Value::Rational(Rational::ONE),
            Ring::Matrix { size, base } => {
                let mut entries = vec![base.zero(); size * size];
                for i in 0..*size {
                    entries[i * size + i] = base.one();
                }
                Value::Matrix(entries)
            }
            Ring::Jacobson(base) => Value::Jacobson(BTreeMap::from([((0, 0), base.one())])),
        }
    }

    /// Image of an integer under the unique ring map from Z.
    pub fn from_int(&self, n: i64) -> Result<Value> {
        match self {
            Ring::IntegersMod(m) | Ring::PrimeField(m) => {
                Ok(Value::Residue((n as i128).rem_euclid(*m as i128) as u64))
            }
            Ring::Rationals => Ok(Value::Rational(Rational::integer(n))),
            Ring::Matrix { size, base } => {
                let c = base.from_int(n)?;
                let mut entries = vec![base.zero(); size * size];
                for i in 0..*size {
                    entries[i * size + i] = c.clone();
                }
                Ok(Value::Matrix(entries))
            }
            Ring::Jacobson(base) => {
                let c = base.from_int(n)?;
                let mut terms = BTreeMap::new();
                if !base.is_zero(&c) {
                    terms.insert((0, 0), c);
                }
                Ok(Value::Jacobson(terms))
            }
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        *v == self.zero()
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value> {
        match (self, a, b) {
            (Ring::IntegersMod(m) | Ring::PrimeField(m), Value::Residue(x), Value::Residue(y)) => {
                Ok(Value::Residue(
                    ((*x as u128 + *y as u128) % *m as u128) as u64,
                ))
            }
            (Ring::Rationals, Value::Rational(x), Value::Rational(y)) => {
                Ok(Value::Rational(x.checked_add(y)?))
            }
            (Ring::Matrix { base, .. }, Value::Matrix(x), Value::Matrix(y)) => Ok(Value::Matrix(
                x.iter()
                    .zip(y)
                    .map(|(p, q)| base.add(p, q))
                    .collect::<Result<_>>()?,
            )),
            (Ring::Jacobson(base), Value::Jacobson(x), Value::Jacobson(y)) => {
                let mut out = x.clone();
                for (mono, c) in y {
                    accumulate(base, &mut out, *mono, c)?;
                }
                Ok(Value::Jacobson(out))
            }
            _ => Err(self.payload_error()),
        }
    }

    pub fn neg(&self, a: &Value) -> Result<Value> {
        match (self, a) {
            (Ring::IntegersMod(m) | Ring::PrimeField(m), Value::Residue(x)) => {
                Ok(Value::Residue(if *x == 0 { 0 } else { m - x }))
            }
            (Ring::Rationals, Value::Rational(x)) => Ok(Value::Rational(x.checked_neg()?)),
            (Ring::Matrix { base, .. }, Value::Matrix(x)) => Ok(Value::Matrix(
                x.iter().map(|p| base.neg(p)).collect::<Result<_>>()?,
            )),
            (Ring::Jacobson(base), Value::Jacobson(x)) => Ok(Value::Jacobson(
                x.iter()
                    .map(|(mono, c)| Ok((*mono, base.neg(c)?)))
                    .collect::<Result<_>>()?,
            )),
            _ => Err(self.payload_error()),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Result<Value> {
        self.add(a, &self.neg(b)?)
    }

    /// Noncommutative product `a * b`.
    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value> {
        match (self, a, b) {
            (Ring::IntegersMod(m) | Ring::PrimeField(m), Value::Residue(x), Value::Residue(y)) => {
                Ok(Value::Residue(
                    ((*x as u128 * *y as u128) % *m as u128) as u64,
                ))
            }
            (Ring::Rationals, Value::Rational(x), Value::Rational(y)) => {
                Ok(Value::Rational(x.checked_mul(y)?))
            }
            (Ring::Matrix { size, base }, Value::Matrix(x), Value::Matrix(y)) => {
                let k = *size;
                let mut out = Vec::with_capacity(k * k);
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = base.zero();
                        for t in 0..k {
                            acc = base.add(&acc, &base.mul(&x[i * k + t], &y[t * k + j])?)?;
                        }
                        out.push(acc);
                    }
                }
                Ok(Value::Matrix(out))
            }
            (Ring::Jacobson(base), Value::Jacobson(x), Value::Jacobson(y)) => {
                let mut out = BTreeMap::new();
                for (lm, lc) in x {
                    for (rm, rc) in y {
                        let mono = monomial_product(*lm, *rm)?;
                        accumulate(base, &mut out, mono, &base.mul(lc, rc)?)?;
                    }
                }
                Ok(Value::Jacobson(out))
            }
            _ => Err(self.payload_error()),
        }
    }

    /// Two-sided inverse in a field.
    pub fn inverse(&self, a: &Value) -> Result<Value> {
        match (self, a) {
            (Ring::PrimeField(p), Value::Residue(x)) => inverse_mod(*x, *p)
                .map(Value::Residue)
                .ok_or(Error::NotInvertible),
            (Ring::Rationals, Value::Rational(x)) => Ok(Value::Rational(x.checked_recip()?)),
            _ if !self.is_field() => Err(Error::NotAField(self.clone())),
            _ => Err(self.payload_error()),
        }
    }

    /// Brings an arbitrary payload of the right shape into canonical form:
    /// residues reduced, Jacobson zero coefficients dropped, matrix entries
    /// normalized recursively.
    pub fn normalize(&self, v: Value) -> Result<Value> {
        match (self, v) {
            (Ring::IntegersMod(m) | Ring::PrimeField(m), Value::Residue(x)) => {
                Ok(Value::Residue(x % m))
            }
            (Ring::Rationals, Value::Rational(x)) => Ok(Value::Rational(x)),
            (Ring::Matrix { size, base }, Value::Matrix(x)) if x.len() == size * size => {
                Ok(Value::Matrix(
                    x.into_iter()
                        .map(|p| base.normalize(p))
                        .collect::<Result<_>>()?,
                ))
            }
            (Ring::Jacobson(base), Value::Jacobson(x)) => {
                let mut out = BTreeMap::new();
                for (mono, c) in x {
                    let c = base.normalize(c)?;
                    if !base.is_zero(&c) {
                        out.insert(mono, c);
                    }
                }
                Ok(Value::Jacobson(out))
            }
            _ => Err(self.payload_error()),
        }
    }

    /// Checks that `v` is a canonical payload for this ring.
    pub fn check(&self, v: &Value) -> Result<()> {
        let canonical = self.normalize(v.clone())?;
        if &canonical == v {
            Ok(())
        } else {
            Err(Error::Literal {
                ring: self.clone(),
                reason: "payload is not in canonical form".into(),
            })
        }
    }

    fn payload_error(&self) -> Error {
        Error::Literal {
            ring: self.clone(),
            reason: "payload variant does not match ring".into(),
        }
    }

    /// Element literal as used in matrix and assignment files.
    pub fn to_literal(&self, v: &Value) -> Json {
        match v {
            Value::Residue(x) => Json::from(*x),
            Value::Rational(r) if r.denom() == 1 => Json::from(r.numer()),
            Value::Rational(r) => Json::from(r.to_string()),
            Value::Matrix(entries) => {
                let (size, base) = match self {
                    Ring::Matrix { size, base } => (*size, base.as_ref()),
                    _ => unreachable!("matrix payload outside a matrix ring"),
                };
                Json::Array(
                    entries
                        .chunks(size)
                        .map(|row| Json::Array(row.iter().map(|e| base.to_literal(e)).collect()))
                        .collect(),
                )
            }
            Value::Jacobson(terms) => {
                let base = match self {
                    Ring::Jacobson(base) => base.as_ref(),
                    _ => unreachable!("Jacobson payload outside a Jacobson ring"),
                };
                Json::Array(
                    terms
                        .iter()
                        .map(|((i, j), c)| {
                            Json::Array(vec![(*i).into(), (*j).into(), base.to_literal(c)])
                        })
                        .collect(),
                )
            }
        }
    }

    /// Parses an element literal. Integers (possibly negative) are read as
    /// their image in the ring and `"a/b"` strings as `a * b^-1`, so integer
    /// and half-integer data files can be reused across rings.
    pub fn from_literal(&self, lit: &Json) -> Result<Value> {
        let bad = |reason: String| Error::Literal {
            ring: self.clone(),
            reason,
        };
        match self {
            Ring::IntegersMod(_) | Ring::PrimeField(_) | Ring::Rationals => {
                let (num, den) = match lit {
                    Json::Number(n) => (
                        n.as_i64()
                            .ok_or_else(|| bad(format!("{n} is not an i64 integer")))?,
                        1,
                    ),
                    Json::String(s) => parse_fraction(s)
                        .ok_or_else(|| bad(format!("`{s}` is not an integer or a/b")))?,
                    other => return Err(bad(format!("expected a scalar, got {other}"))),
                };
                let n = self.from_int(num)?;
                if den == 1 {
                    return Ok(n);
                }
                let d = self.from_int(den)?;
                let d_inv = match (self, &d) {
                    (Ring::IntegersMod(m), Value::Residue(x)) => {
                        Value::Residue(inverse_mod(*x, *m).ok_or(Error::NotInvertible)?)
                    }
                    _ => self.inverse(&d)?,
                };
                self.mul(&n, &d_inv)
            }
            Ring::Matrix { size, base } => {
                let rows = lit
                    .as_array()
                    .filter(|r| r.len() == *size)
                    .ok_or_else(|| bad(format!("expected {size} rows")))?;
                let mut entries = Vec::with_capacity(size * size);
                for row in rows {
                    let row = row
                        .as_array()
                        .filter(|r| r.len() == *size)
                        .ok_or_else(|| bad(format!("expected {size} columns")))?;
                    for e in row {
                        entries.push(base.from_literal(e)?);
                    }
                }
                Ok(Value::Matrix(entries))
            }
            Ring::Jacobson(base) => {
                let triples = lit
                    .as_array()
                    .ok_or_else(|| bad("expected an array of [i, j, coeff] triples".into()))?;
                let mut out = BTreeMap::new();
                for t in triples {
                    let t = t
                        .as_array()
                        .filter(|t| t.len() == 3)
                        .ok_or_else(|| bad("expected [i, j, coeff]".into()))?;
                    let exp = |e: &Json| {
                        e.as_u64()
                            .and_then(|x| u32::try_from(x).ok())
                            .ok_or_else(|| bad(format!("bad exponent {e}")))
                    };
                    let mono = (exp(&t[0])?, exp(&t[1])?);
                    accumulate(base, &mut out, mono, &base.from_literal(&t[2])?)?;
                }
                Ok(Value::Jacobson(out))
            }
        }
    }

    pub fn display<'a>(&'a self, v: &'a Value) -> impl fmt::Display + 'a {
        DisplayValue {
            ring: self,
            value: v,
        }
    }
}

fn parse_fraction(s: &str) -> Option<(i64, i64)> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => Some((n.trim().parse().ok()?, d.trim().parse().ok()?)),
        None => Some((s.parse().ok()?, 1)),
    }
}

fn accumulate(
    base: &Ring,
    terms: &mut BTreeMap<Monomial, Value>,
    mono: Monomial,
    c: &Value,
) -> Result<()> {
    let sum = match terms.get(&mono) {
        Some(old) => base.add(old, c)?,
        None => c.clone(),
    };
    if base.is_zero(&sum) {
        terms.remove(&mono);
    } else {
        terms.insert(mono, sum);
    }
    Ok(())
}

struct DisplayValue<'a> {
    ring: &'a Ring,
    value: &'a Value,
}

impl fmt::Display for DisplayValue<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.ring, self.value) {
            (_, Value::Residue(x)) => write!(f, "{x}"),
            (_, Value::Rational(r)) => write!(f, "{r}"),
            (Ring::Matrix { size, base }, Value::Matrix(entries)) => {
                write!(f, "[")?;
                for (r, row) in entries.chunks(*size).enumerate() {
                    if r > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "[")?;
                    for (c, e) in row.iter().enumerate() {
                        if c > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{}", base.display(e))?;
                    }
                    write!(f, "]")?;
                }
                write!(f, "]")
            }
            (Ring::Jacobson(base), Value::Jacobson(terms)) => {
                if terms.is_empty() {
                    return write!(f, "0");
                }
                for (n, ((i, j), c)) in terms.iter().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    let mut parts = Vec::new();
                    if !base.is_one(c) || (*i, *j) == (0, 0) {
                        parts.push(base.display(c).to_string());
                    }
                    for (var, e) in [("y", *i), ("x", *j)] {
                        match e {
                            0 => {}
                            1 => parts.push(var.to_string()),
                            e => parts.push(format!("{var}^{e}")),
                        }
                    }
                    write!(f, "{}", parts.join("*"))?;
                }
                Ok(())
            }
            _ => write!(f, "<invalid>"),
        }
    }
}

/// A value together with the ring it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    ring: Ring,
    value: Value,
}

impl Element {
    /// Wraps a payload, rejecting non-canonical ones.
    pub fn new(ring: Ring, value: Value) -> Result<Self> {
        ring.check(&value)?;
        Ok(Element { ring, value })
    }

    pub(crate) fn from_parts(ring: Ring, value: Value) -> Self {
        Element { ring, value }
    }

    pub fn zero(ring: &Ring) -> Self {
        Element::from_parts(ring.clone(), ring.zero())
    }

    pub fn one(ring: &Ring) -> Self {
        Element::from_parts(ring.clone(), ring.one())
    }

    pub fn from_int(ring: &Ring, n: i64) -> Result<Self> {
        Ok(Element::from_parts(ring.clone(), ring.from_int(n)?))
    }

    /// `coeff * y^i x^j` in a Jacobson algebra.
    pub fn monomial(ring: &Ring, i: u32, j: u32, coeff: i64) -> Result<Self> {
        let Ring::Jacobson(base) = ring else {
            return Err(ring.payload_error());
        };
        let c = base.from_int(coeff)?;
        let mut terms = BTreeMap::new();
        if !base.is_zero(&c) {
            terms.insert((i, j), c);
        }
        Ok(Element::from_parts(ring.clone(), Value::Jacobson(terms)))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    fn same_ring(&self, other: &Element) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                expected: self.ring.clone(),
                found: other.ring.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(Element::from_parts(
            self.ring.clone(),
            self.ring.add(&self.value, &other.value)?,
        ))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(Element::from_parts(
            self.ring.clone(),
            self.ring.sub(&self.value, &other.value)?,
        ))
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_ring(other)?;
        Ok(Element::from_parts(
            self.ring.clone(),
            self.ring.mul(&self.value, &other.value)?,
        ))
    }

    pub fn neg(&self) -> Result<Element> {
        Ok(Element::from_parts(
            self.ring.clone(),
            self.ring.neg(&self.value)?,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.value)
    }

    /// Equality that reports a ring mismatch instead of answering `false`.
    pub fn eq_checked(&self, other: &Element) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.value == other.value)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.display(&self.value))
    }
}
