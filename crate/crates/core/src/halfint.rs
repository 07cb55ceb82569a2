use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;
use crate::scalars::Rational;

/// An element of `Z + (1/2)Z`, stored as twice its value.
///
/// Arithmetic is overflow-checked; the index windows used anywhere in this
/// crate are many orders of magnitude below the `i64` range.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(n * 2)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The integer value, if this is an integer.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.0.into(), 2.into())
    }

    /// Every half-integer `v` with `|v| <= window`, in increasing order.
    pub fn window(window: HalfInt) -> impl Iterator<Item = HalfInt> + Clone {
        let w = window.0.abs();
        (-w..=w).map(HalfInt)
    }

    pub fn scale(self, k: i64) -> Self {
        HalfInt(self.0.checked_mul(k).expect("half-integer overflow"))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0.checked_add(rhs.0).expect("half-integer overflow"))
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0.checked_sub(rhs.0).expect("half-integer overflow"))
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        self.scale(k)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `k` or `k/2` with `k` a (possibly signed) integer.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidLiteral(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => {
                let n: i64 = t.parse().map_err(|_| bad())?;
                n.checked_mul(2).map(HalfInt).ok_or_else(bad)
            }
            Some((num, den)) => {
                if den.trim() != "2" {
                    return Err(bad());
                }
                let n: i64 = num.trim().parse().map_err(|_| bad())?;
                Ok(HalfInt(n))
            }
        }
    }
}
