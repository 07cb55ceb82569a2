//! Exact scalars: `Q` and the biquadratic field `Q(i, sqrt 2)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `c1 + ci*i + cs*sqrt2 + cis*i*sqrt2` with exact rational components.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub c1: Rational,
    pub ci: Rational,
    pub cs: Rational,
    pub cis: Rational,
}

impl Scalar {
    pub fn new(c1: Rational, ci: Rational, cs: Rational, cis: Rational) -> Self {
        Scalar { c1, ci, cs, cis }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Scalar {
            ci: Rational::one(),
            ..Scalar::zero()
        }
    }

    pub fn sqrt2() -> Self {
        Scalar {
            cs: Rational::one(),
            ..Scalar::zero()
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar {
            c1: q,
            ..Scalar::zero()
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.ci.is_zero() && self.cs.is_zero() && self.cis.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c1.is_one() && self.ci.is_zero() && self.cs.is_zero() && self.cis.is_zero()
    }

    /// The rational value, when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.ci.is_zero() && self.cs.is_zero() && self.cis.is_zero()).then_some(&self.c1)
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.c1, &self.ci, &self.cs, &self.cis]
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        Scalar {
            c1: &self.c1 * q,
            ci: &self.ci * q,
            cs: &self.cs * q,
            cis: &self.cis * q,
        }
    }

    /// Image under `i -> -i`.
    pub fn conj_i(&self) -> Scalar {
        Scalar {
            c1: self.c1.clone(),
            ci: -&self.ci,
            cs: self.cs.clone(),
            cis: -&self.cis,
        }
    }

    /// Image under `sqrt2 -> -sqrt2`.
    pub fn conj_sqrt2(&self) -> Scalar {
        Scalar {
            c1: self.c1.clone(),
            ci: self.ci.clone(),
            cs: -&self.cs,
            cis: -&self.cis,
        }
    }

    /// Multiplicative inverse, rationalizing first over `i` and then over
    /// `sqrt2`: `x * conj_i(x)` lies in `Q(sqrt2)`, and `y * conj_sqrt2(y)`
    /// of such a `y` is rational.
    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let xi = self.conj_i();
        let n1 = self * &xi;
        debug_assert!(n1.ci.is_zero() && n1.cis.is_zero());
        let n1c = n1.conj_sqrt2();
        let n2 = &n1 * &n1c;
        let norm = n2.as_rational().expect("norm is rational").clone();
        Ok((&xi * &n1c).scale(&norm.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, b: &Scalar) -> Scalar {
        Scalar {
            c1: &self.c1 + &b.c1,
            ci: &self.ci + &b.ci,
            cs: &self.cs + &b.cs,
            cis: &self.cis + &b.cis,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, b: Scalar) -> Scalar {
        &self + &b
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, b: &Scalar) {
        self.c1 += &b.c1;
        self.ci += &b.ci;
        self.cs += &b.cs;
        self.cis += &b.cis;
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, b: &Scalar) -> Scalar {
        Scalar {
            c1: &self.c1 - &b.c1,
            ci: &self.ci - &b.ci,
            cs: &self.cs - &b.cs,
            cis: &self.cis - &b.cis,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, b: Scalar) -> Scalar {
        &self - &b
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            c1: -&self.c1,
            ci: -&self.ci,
            cs: -&self.cs,
            cis: -&self.cis,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// i^2 = -1, s^2 = 2, (is)^2 = -2, i*s = is, i*is = -s, s*is = 2i.
impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, b: &Scalar) -> Scalar {
        let a = self;
        let two = int(2);
        let c1 = &a.c1 * &b.c1 - &a.ci * &b.ci + &two * (&a.cs * &b.cs - &a.cis * &b.cis);
        let ci = &a.c1 * &b.ci + &a.ci * &b.c1 + &two * (&a.cs * &b.cis + &a.cis * &b.cs);
        let cs = &a.c1 * &b.cs + &a.cs * &b.c1 - (&a.ci * &b.cis + &a.cis * &b.ci);
        let cis = &a.c1 * &b.cis + &a.cis * &b.c1 + &a.ci * &b.cs + &a.cs * &b.ci;
        Scalar { c1, ci, cs, cis }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, b: Scalar) -> Scalar {
        &self * &b
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// `a + b*i + c*s2 + d*i*s2`; zero components are omitted, unit magnitudes
/// on radicals are elided (`i`, `- s2`), and the zero scalar prints `0`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (q, radical) in [
            (&self.c1, ""),
            (&self.ci, "i"),
            (&self.cs, "s2"),
            (&self.cis, "i*s2"),
        ] {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if radical.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(radical)?;
            } else {
                write!(f, "{mag}*{radical}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64, c: i64, d: i64) -> Scalar {
        Scalar::new(int(a), int(b), int(c), int(d))
    }

    #[test]
    fn addition_examples() {
        assert_eq!(s(1, 0, 0, 0) + s(0, 1, 0, 0), s(1, 1, 0, 0));
        assert_eq!(
            Scalar::from_ratio(1, 2) + Scalar::from_ratio(1, 2),
            Scalar::one()
        );
    }

    #[test]
    fn defining_relations() {
        assert_eq!(Scalar::i() * Scalar::i(), s(-1, 0, 0, 0));
        assert_eq!(Scalar::sqrt2() * Scalar::sqrt2(), s(2, 0, 0, 0));
        // (1+i)(1-i) = 1 - i^2 = 2
        assert_eq!(s(1, 1, 0, 0) * s(1, -1, 0, 0), s(2, 0, 0, 0));
        let is = Scalar::i() * Scalar::sqrt2();
        assert_eq!(is, s(0, 0, 0, 1));
        assert_eq!(&is * &is, s(-2, 0, 0, 0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Scalar::from_int(2).inv().unwrap(), Scalar::from_ratio(1, 2));
        assert_eq!(Scalar::i().inv().unwrap(), s(0, -1, 0, 0));
        let inv = s(1, 0, 1, 0).inv().unwrap();
        assert_eq!(inv, s(-1, 0, 1, 0));
        assert_eq!(s(1, 0, 1, 0) * s(-1, 0, 1, 0), Scalar::one());
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(
            Scalar::new(rat(1, 2), int(1), int(0), int(0)).to_string(),
            "1/2 + i"
        );
        assert_eq!(s(0, 0, -3, 0).to_string(), "-3*s2");
        assert_eq!(s(2, -1, 0, 1).to_string(), "2 - i + i*s2");
        assert_eq!(
            Scalar::new(int(0), int(0), int(0), rat(-5, 2)).to_string(),
            "-5/2*i*s2"
        );
    }
}
