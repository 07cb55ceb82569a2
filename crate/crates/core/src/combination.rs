//! Finite formal linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use crate::scalars::Scalar;

/// A finitely supported map `basis -> Scalar` with no zero coefficients, so
/// structural equality is equality of vectors. Terms iterate in basis order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Combination<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord> Default for Combination<B> {
    fn default() -> Self {
        Combination {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: Ord + Clone> Combination<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: B, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// The single term, when the support has exactly one element.
    pub fn as_single(&self) -> Option<(&B, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn remove(&mut self, b: &B) -> Option<Scalar> {
        self.terms.remove(b)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Combination {
            terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect(),
        }
    }

    /// Linear extension of a map defined on basis vectors.
    pub fn map_linear<C: Ord + Clone>(
        &self,
        mut f: impl FnMut(&B) -> Combination<C>,
    ) -> Combination<C> {
        let mut out = Combination::zero();
        for (b, x) in &self.terms {
            out.add_scaled(&f(b), x);
        }
        out
    }

    /// Bilinear extension of a map on basis pairs.
    pub fn bilinear<C: Ord + Clone, D: Ord + Clone>(
        &self,
        other: &Combination<C>,
        mut f: impl FnMut(&B, &C) -> Combination<D>,
    ) -> Combination<D> {
        let mut out = Combination::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_scaled(&f(a, b), &(x * y));
            }
        }
        out
    }
}

impl<'a, B: Ord + Clone> Add<&'a Combination<B>> for &'a Combination<B> {
    type Output = Combination<B>;
    fn add(self, rhs: &Combination<B>) -> Combination<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<B: Ord + Clone> Add for Combination<B> {
    type Output = Combination<B>;
    fn add(mut self, rhs: Combination<B>) -> Combination<B> {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<'a, B: Ord + Clone> Sub<&'a Combination<B>> for &'a Combination<B> {
    type Output = Combination<B>;
    fn sub(self, rhs: &Combination<B>) -> Combination<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl<B: Ord + Clone> Sub for Combination<B> {
    type Output = Combination<B>;
    fn sub(self, rhs: Combination<B>) -> Combination<B> {
        &self - &rhs
    }
}

impl<B: Ord + Clone> Neg for &Combination<B> {
    type Output = Combination<B>;
    fn neg(self) -> Combination<B> {
        self.scale(&-Scalar::one())
    }
}

impl<B: Ord + Clone> Neg for Combination<B> {
    type Output = Combination<B>;
    fn neg(self) -> Combination<B> {
        -&self
    }
}

impl<'a, B: Ord> IntoIterator for &'a Combination<B> {
    type Item = (&'a B, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for Combination<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        Combination::from_terms(iter)
    }
}

/// Canonical text: terms in basis order joined by ` + ` / ` - `, unit
/// coefficients elided, rational coefficients written `q*`, and any other
/// coefficient parenthesized. The zero combination prints `0`.
impl<B: Ord + std::fmt::Display> std::fmt::Display for Combination<B> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::{One, Signed};
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let mag = q.abs();
                    let body = if mag.is_one() {
                        String::new()
                    } else {
                        format!("{mag}*")
                    };
                    (q.is_negative(), body)
                }
                None => (false, format!("({c})*")),
            };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{body}{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_prunes_terms() {
        let mut x = Combination::term(1u8, Scalar::from_int(3));
        x.add_term(1, Scalar::from_int(-3));
        assert!(x.is_zero());
        let y = Combination::term(2u8, Scalar::one());
        assert_eq!(&y - &y, Combination::zero());
        assert!(y.scale(&Scalar::zero()).is_zero());
    }
}
