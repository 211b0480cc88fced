use super::{Ring, Value};
use crate::error::{Error, Result};

/// All elements of a finite ring, each exactly once.
///
/// Residues come in ascending order; matrices in row-major lexicographic
/// order of their entries (the first entry is the most significant digit).
/// The position of an element in this list is its [`index_of`].
pub fn enumerate(ring: &Ring, cap: u128) -> Result<Vec<Value>> {
    let card = ring.require_within(cap)?;
    let mut out = Vec::with_capacity(card);
    match ring {
        Ring::IntegersMod(m) | Ring::PrimeField(m) => out.extend((0..*m).map(Value::Residue)),
        Ring::Matrix { size, base } => {
            let digits = enumerate(base, cap)?;
            let len = size * size;
            let mut odometer = vec![0usize; len];
            for _ in 0..card {
                out.push(Value::Matrix(
                    odometer.iter().map(|&d| digits[d].clone()).collect(),
                ));
                for slot in odometer.iter_mut().rev() {
                    *slot += 1;
                    if *slot < digits.len() {
                        break;
                    }
                    *slot = 0;
                }
            }
        }
        Ring::Rationals | Ring::Jacobson(_) => return Err(Error::InfiniteRing(ring.clone())),
    }
    Ok(out)
}

/// Position of `v` in [`enumerate`] order, or `None` for infinite rings and
/// payloads that do not belong to the ring.
pub fn index_of(ring: &Ring, v: &Value) -> Option<usize> {
    match (ring, v) {
        (Ring::IntegersMod(m) | Ring::PrimeField(m), Value::Residue(x)) if x < m => {
            usize::try_from(*x).ok()
        }
        (Ring::Matrix { size, base }, Value::Matrix(entries)) if entries.len() == size * size => {
            let radix = usize::try_from(base.cardinality()?).ok()?;
            entries.iter().try_fold(0usize, |acc, e| {
                acc.checked_mul(radix)?.checked_add(index_of(base, e)?)
            })
        }
        _ => None,
    }
}

/// Cayley tables of a finite ring, with elements referred to by their
/// enumeration index. Used wherever exhaustive quantification or search
/// needs millions of products.
#[derive(Clone, Debug)]
pub struct FiniteTable {
    ring: Ring,
    elements: Vec<Value>,
    add: Vec<u32>,
    mul: Vec<u32>,
    zero: u32,
    one: u32,
}

impl FiniteTable {
    pub fn new(ring: &Ring, cap: u128) -> Result<Self> {
        let elements = enumerate(ring, cap)?;
        Self::from_elements(ring, elements)
    }

    /// Tables over an explicit list of elements closed under `+` and `*`
    /// (e.g. zero-padded rectangular matrices inside a square matrix ring).
    pub fn from_elements(ring: &Ring, elements: Vec<Value>) -> Result<Self> {
        let size = elements.len();
        if size > u32::MAX as usize {
            return Err(Error::CapExceeded {
                ring: ring.clone(),
                required: size as u128,
                cap: u32::MAX as u128,
            });
        }
        let full = ring.cardinality() == Some(size as u128);
        let lookup: std::collections::HashMap<&Value, u32> = if full {
            Default::default()
        } else {
            elements
                .iter()
                .enumerate()
                .map(|(i, v)| (v, i as u32))
                .collect()
        };
        let locate = |v: &Value| -> Result<u32> {
            let idx = if full {
                index_of(ring, v).map(|i| i as u32)
            } else {
                lookup.get(v).copied()
            };
            idx.ok_or_else(|| Error::Literal {
                ring: ring.clone(),
                reason: "element set is not closed under the ring operations".into(),
            })
        };
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &elements {
            for b in &elements {
                add.push(locate(&ring.add(a, b)?)?);
                mul.push(locate(&ring.mul(a, b)?)?);
            }
        }
        let zero = locate(&ring.zero())?;
        let one = locate(&ring.one()).unwrap_or(u32::MAX);
        Ok(FiniteTable {
            ring: ring.clone(),
            elements,
            add,
            mul,
            zero,
            one,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Value] {
        &self.elements
    }

    pub fn value(&self, i: u32) -> &Value {
        &self.elements[i as usize]
    }

    pub fn index(&self, v: &Value) -> Option<u32> {
        self.elements.iter().position(|e| e == v).map(|i| i as u32)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    /// Index of the ring's one, or `u32::MAX` when the element set does not
    /// contain it.
    pub fn one(&self) -> u32 {
        self.one
    }
}
