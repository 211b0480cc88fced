use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational with `i64` parts.
///
/// Always reduced with a positive denominator; zero is `0/1`. Arithmetic is
/// carried out in `i128` and fails with [`Error::Overflow`] when the reduced
/// result does not fit back into `i64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        Self::from_wide(num as i128, den as i128)
    }

    pub fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    fn from_wide(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = gcd(num, den).max(1);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            d = 1;
        }
        let num = i64::try_from(n).map_err(|_| Error::Overflow)?;
        let den = i64::try_from(d).map_err(|_| Error::Overflow)?;
        Ok(Rational { num, den })
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let num = self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128;
        Self::from_wide(num, self.den as i128 * other.den as i128)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Self::from_wide(
            self.num as i128 * other.num as i128,
            self.den as i128 * other.den as i128,
        )
    }

    pub fn checked_neg(&self) -> Result<Self> {
        Self::from_wide(-(self.num as i128), self.den as i128)
    }

    pub fn checked_recip(&self) -> Result<Self> {
        if self.num == 0 {
            return Err(Error::NotInvertible);
        }
        Self::from_wide(self.den as i128, self.num as i128)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
