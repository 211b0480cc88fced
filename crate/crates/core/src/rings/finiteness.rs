use std::fmt;

use super::{enumerate, Element, FiniteTable, Ring};
use crate::error::{Error, Result};

/// Largest ring for which exhaustive quantification builds Cayley tables.
const TABLE_LIMIT: u128 = 4096;

/// The nine equivalent formulations of Dedekind finiteness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// xy = 1 implies yx = 1.
    DedekindFinite,
    /// Right-invertible elements are left-invertible.
    RightInvertibleIsLeftInvertible,
    /// xy = 1 and xz = 0 imply z = 0.
    Capacity,
    /// Right inverses are unique.
    UniqueRightInverse,
    /// Left-invertible elements are two-sided invertible.
    LeftInvertibleIsUnit,
    /// Left-invertible elements are right-invertible.
    LeftInvertibleIsRightInvertible,
    /// yx = 1 and zx = 0 imply z = 0.
    DualCapacity,
    /// Left inverses are unique.
    UniqueLeftInverse,
    /// Right-invertible elements are two-sided invertible.
    RightInvertibleIsUnit,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::DedekindFinite,
        Condition::RightInvertibleIsLeftInvertible,
        Condition::Capacity,
        Condition::UniqueRightInverse,
        Condition::LeftInvertibleIsUnit,
        Condition::LeftInvertibleIsRightInvertible,
        Condition::DualCapacity,
        Condition::UniqueLeftInverse,
        Condition::RightInvertibleIsUnit,
    ];

    pub fn number(self) -> usize {
        Condition::ALL.iter().position(|&c| c == self).unwrap() + 1
    }

    pub fn statement(self) -> &'static str {
        match self {
            Condition::DedekindFinite => "forall x,y (xy=1 -> yx=1)",
            Condition::RightInvertibleIsLeftInvertible => {
                "forall x ((exists y xy=1) -> (exists z zx=1))"
            }
            Condition::Capacity => "forall x,y,z ((xy=1 & xz=0) -> z=0)",
            Condition::UniqueRightInverse => "forall x,y,z ((xy=1 & xz=1) -> y=z)",
            Condition::LeftInvertibleIsUnit => "forall x,y (yx=1 -> exists z xz=zx=1)",
            Condition::LeftInvertibleIsRightInvertible => {
                "forall x ((exists y yx=1) -> (exists z xz=1))"
            }
            Condition::DualCapacity => "forall x,y,z ((yx=1 & zx=0) -> z=0)",
            Condition::UniqueLeftInverse => "forall x,y,z ((yx=1 & zx=1) -> y=z)",
            Condition::RightInvertibleIsUnit => "forall x,y (xy=1 -> exists z xz=zx=1)",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.number(), self.statement())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub condition: Condition,
    pub holds: bool,
    /// Bound variables `[x, y, z]` (as many as the statement quantifies) of
    /// the first violation found.
    pub counterexample: Option<Vec<Element>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryReport {
    pub ring: Ring,
    pub verdicts: Vec<ConditionVerdict>,
}

impl BatteryReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    /// The nine conditions are equivalent, so a consistent report has all
    /// verdicts equal.
    pub fn all_agree(&self) -> bool {
        self.verdicts.windows(2).all(|w| w[0].holds == w[1].holds)
    }
}

struct Inverses {
    table: FiniteTable,
    right: Vec<Vec<u32>>,
    left: Vec<Vec<u32>>,
}

impl Inverses {
    fn new(ring: &Ring, cap: u128) -> Result<Self> {
        let card = ring.require_within(cap)?;
        if card as u128 > TABLE_LIMIT {
            return Err(Error::CapExceeded {
                ring: ring.clone(),
                required: card as u128,
                cap: TABLE_LIMIT,
            });
        }
        let table = FiniteTable::new(ring, cap)?;
        let n = table.len() as u32;
        let one = table.one();
        let mut right = vec![Vec::new(); n as usize];
        let mut left = vec![Vec::new(); n as usize];
        for x in 0..n {
            for y in 0..n {
                if table.mul(x, y) == one {
                    right[x as usize].push(y);
                    left[y as usize].push(x);
                }
            }
        }
        Ok(Inverses { table, right, left })
    }

    fn element(&self, i: u32) -> Element {
        Element::from_parts(self.table.ring().clone(), self.table.value(i).clone())
    }

    fn witness(&self, idx: &[u32]) -> Option<Vec<Element>> {
        Some(idx.iter().map(|&i| self.element(i)).collect())
    }

    fn evaluate(&self, cond: Condition) -> Option<Vec<Element>> {
        let t = &self.table;
        let n = t.len() as u32;
        let (zero, one) = (t.zero(), t.one());
        let two_sided = |x: u32| self.right[x as usize].iter().any(|&z| t.mul(z, x) == one);
        for x in 0..n {
            let (right, left) = (&self.right[x as usize], &self.left[x as usize]);
            let found = match cond {
                Condition::DedekindFinite => right
                    .iter()
                    .find(|&&y| t.mul(y, x) != one)
                    .map(|&y| vec![x, y]),
                Condition::RightInvertibleIsLeftInvertible => {
                    (!right.is_empty() && left.is_empty()).then(|| vec![x, right[0]])
                }
                Condition::Capacity => right.first().and_then(|&y| {
                    (0..n)
                        .find(|&z| z != zero && t.mul(x, z) == zero)
                        .map(|z| vec![x, y, z])
                }),
                Condition::UniqueRightInverse => {
                    (right.len() > 1).then(|| vec![x, right[0], right[1]])
                }
                Condition::LeftInvertibleIsUnit => {
                    (!left.is_empty() && !two_sided(x)).then(|| vec![x, left[0]])
                }
                Condition::LeftInvertibleIsRightInvertible => {
                    (!left.is_empty() && right.is_empty()).then(|| vec![x, left[0]])
                }
                Condition::DualCapacity => left.first().and_then(|&y| {
                    (0..n)
                        .find(|&z| z != zero && t.mul(z, x) == zero)
                        .map(|z| vec![x, y, z])
                }),
                Condition::UniqueLeftInverse => (left.len() > 1).then(|| vec![x, left[0], left[1]]),
                Condition::RightInvertibleIsUnit => {
                    (!right.is_empty() && !two_sided(x)).then(|| vec![x, right[0]])
                }
            };
            if let Some(idx) = found {
                return self.witness(&idx);
            }
        }
        None
    }
}

/// Evaluates all nine conditions by exhaustive quantification over a finite
/// ring, stopping each at its first counterexample.
pub fn theorem1_battery(ring: &Ring, cap: u128) -> Result<BatteryReport> {
    let inv = Inverses::new(ring, cap)?;
    let verdicts = Condition::ALL
        .iter()
        .map(|&condition| {
            let counterexample = inv.evaluate(condition);
            ConditionVerdict {
                condition,
                holds: counterexample.is_none(),
                counterexample,
            }
        })
        .collect();
    Ok(BatteryReport {
        ring: ring.clone(),
        verdicts,
    })
}

pub fn is_dedekind_finite(ring: &Ring, cap: u128) -> Result<bool> {
    let inv = Inverses::new(ring, cap)?;
    Ok(inv.evaluate(Condition::DedekindFinite).is_none())
}

/// Whether `M_k(ring)` is Dedekind finite. The cap applies to `M_k(ring)`.
pub fn is_k_stable(ring: &Ring, k: usize, cap: u128) -> Result<bool> {
    is_dedekind_finite(&Ring::matrix(k, ring.clone())?, cap)
}

fn inverses(a: &Element, cap: u128, on_left: bool) -> Result<Vec<Element>> {
    let ring = a.ring();
    let mut out = Vec::new();
    for z in enumerate(ring, cap)? {
        let p = if on_left {
            ring.mul(&z, a.value())?
        } else {
            ring.mul(a.value(), &z)?
        };
        if ring.is_one(&p) {
            out.push(Element::from_parts(ring.clone(), z));
        }
    }
    Ok(out)
}

/// `{z : z*a = 1}` in enumeration order.
pub fn left_inverses(a: &Element, cap: u128) -> Result<Vec<Element>> {
    inverses(a, cap, true)
}

/// `{y : a*y = 1}` in enumeration order.
pub fn right_inverses(a: &Element, cap: u128) -> Result<Vec<Element>> {
    inverses(a, cap, false)
}

/// True iff `xy = 1`, `xz = 0` and `z != 0`: a certificate that the ring
/// is not Dedekind finite.
pub fn check_capacity_violation_witness(x: &Element, y: &Element, z: &Element) -> Result<bool> {
    Ok(x.mul(y)?.is_one() && x.mul(z)?.is_zero() && !z.is_zero())
}

/// True iff `d1 r1 = d2 r2 = 1` and `d1 r2 = d2 r1 = 0`.
pub fn check_star_star_witness(
    r1: &Element,
    r2: &Element,
    d1: &Element,
    d2: &Element,
) -> Result<bool> {
    Ok(d1.mul(r1)?.is_one()
        && d2.mul(r2)?.is_one()
        && d1.mul(r2)?.is_zero()
        && d2.mul(r1)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_ring;

    fn ring(s: &str) -> Ring {
        parse_ring(s).unwrap()
    }

    fn el(r: &Ring, n: i64) -> Element {
        Element::from_int(r, n).unwrap()
    }

    #[test]
    fn one_sided_inverses() {
        let z6 = ring("Z6");
        assert_eq!(right_inverses(&el(&z6, 5), 100).unwrap(), vec![el(&z6, 5)]);
        assert!(right_inverses(&el(&z6, 2), 100).unwrap().is_empty());
        let gf3 = ring("GF3");
        assert_eq!(left_inverses(&el(&gf3, 2), 100).unwrap(), vec![el(&gf3, 2)]);
        assert!(matches!(
            left_inverses(&Element::one(&Ring::Rationals), 100),
            Err(Error::InfiniteRing(_))
        ));
    }

    #[test]
    fn battery_on_small_rings() {
        for spec in ["Z6", "GF5", "M2(GF2)"] {
            let report = theorem1_battery(&ring(spec), 1000).unwrap();
            assert!(report.all_hold(), "{spec}");
            assert_eq!(report.verdicts.len(), 9);
        }
        assert!(matches!(
            theorem1_battery(&ring("J(GF2)"), 1000),
            Err(Error::InfiniteRing(_))
        ));
    }

    #[test]
    fn dedekind_and_stability() {
        assert!(is_dedekind_finite(&ring("Z12"), 100).unwrap());
        assert!(is_dedekind_finite(&ring("M3(GF2)"), 1000).unwrap());
        assert!(matches!(
            is_dedekind_finite(&ring("J(GF2)"), 100),
            Err(Error::InfiniteRing(_))
        ));
        assert!(is_k_stable(&ring("GF2"), 2, 1_000_000).unwrap());
        assert!(is_k_stable(&ring("Z4"), 1, 1_000_000).unwrap());
        // |M2(Z6)| = 6^4 and |M3(Z6)| = 6^9
        assert!(matches!(
            is_k_stable(&ring("Z6"), 2, 1000),
            Err(Error::CapExceeded { required: 1296, .. })
        ));
        assert!(matches!(
            is_k_stable(&ring("Z6"), 3, 1_000_000),
            Err(Error::CapExceeded {
                required: 10_077_696,
                ..
            })
        ));
    }

    #[test]
    fn jacobson_capacity_violation() {
        let j = ring("J(GF2)");
        let x = Element::monomial(&j, 0, 1, 1).unwrap();
        let y = Element::monomial(&j, 1, 0, 1).unwrap();
        let z = Element::one(&j).sub(&y.mul(&x).unwrap()).unwrap();
        assert!(check_capacity_violation_witness(&x, &y, &z).unwrap());
        assert!(!check_capacity_violation_witness(&y, &x, &z).unwrap());
        let z6 = ring("Z6");
        assert!(!check_capacity_violation_witness(&el(&z6, 1), &el(&z6, 1), &el(&z6, 0)).unwrap());
        assert!(matches!(
            check_capacity_violation_witness(&x, &el(&z6, 1), &z),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn star_star_witnesses() {
        let gf2 = ring("GF2");
        let (one, zero) = (el(&gf2, 1), el(&gf2, 0));
        assert!(!check_star_star_witness(&one, &zero, &one, &zero).unwrap());
        let j = ring("J(GF2)");
        let x = Element::monomial(&j, 0, 1, 1).unwrap();
        let y = Element::monomial(&j, 1, 0, 1).unwrap();
        let e = Element::one(&j).sub(&y.mul(&x).unwrap()).unwrap();
        assert!(!check_star_star_witness(&y, &e, &x, &x).unwrap());
        let z4 = ring("Z4");
        let all: Vec<Element> = (0..4).map(|n| el(&z4, n)).collect();
        for r1 in &all {
            for r2 in &all {
                for d1 in &all {
                    for d2 in &all {
                        assert!(!check_star_star_witness(r1, r2, d1, d2).unwrap());
                    }
                }
            }
        }
    }
}
