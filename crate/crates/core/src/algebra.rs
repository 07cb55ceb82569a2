//! The unital 3-Lie Poisson algebra `L`.
//!
//! Basis `L_{l,m}^r` with `l, m, r` in `Z + Z/2`. The commutative product
//! adds indices, `L_{0,0}^0` is the unit, and the 3-bracket is
//!
//! ```text
//! [L_a1, L_a2, L_a3] = M(a1, a2, a3) * L_{a1 + a2 + a3 - nu},   nu = (1, 1, 0)
//! ```
//!
//! where `M` is the determinant with rows `(r1 r2 r3)`, `(l1 l2 l3)`,
//! `(m1 m2 m3)`.

use std::fmt;

use crate::combination::Combination;
use crate::halfint::HalfInt;
use crate::scalars::{rat, Rational, Scalar};

/// The index `(l, m, r)` of `L_{l,m}^r`. Ordered lexicographically by
/// `(l, m, r)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub l: HalfInt,
    pub m: HalfInt,
    pub r: HalfInt,
}

impl BasisIndex {
    /// `nu = (1, 1, 0)`, the shift subtracted by the bracket.
    pub const NU: BasisIndex = BasisIndex::from_doubled(2, 2, 0);
    pub const UNIT: BasisIndex = BasisIndex::from_doubled(0, 0, 0);

    pub const fn new(l: HalfInt, m: HalfInt, r: HalfInt) -> Self {
        BasisIndex { l, m, r }
    }

    pub const fn from_doubled(l: i64, m: i64, r: i64) -> Self {
        BasisIndex {
            l: HalfInt::from_doubled(l),
            m: HalfInt::from_doubled(m),
            r: HalfInt::from_doubled(r),
        }
    }

    pub const fn ints(l: i64, m: i64, r: i64) -> Self {
        BasisIndex::from_doubled(2 * l, 2 * m, 2 * r)
    }

    pub fn is_unit(&self) -> bool {
        *self == BasisIndex::UNIT
    }

    pub fn doubled(&self) -> [i64; 3] {
        [self.l.doubled(), self.m.doubled(), self.r.doubled()]
    }

    /// Every index with all three components in `[-window, window]`, in
    /// basis order.
    pub fn window(window: HalfInt) -> impl Iterator<Item = BasisIndex> + Clone {
        HalfInt::window(window).flat_map(move |l| {
            HalfInt::window(window)
                .flat_map(move |m| HalfInt::window(window).map(move |r| BasisIndex { l, m, r }))
        })
    }

    pub fn scale(&self, k: i64) -> BasisIndex {
        BasisIndex {
            l: self.l * k,
            m: self.m * k,
            r: self.r * k,
        }
    }

    /// True if `self = k * other` or `other = k * self` for some rational
    /// `k`, i.e. the two vectors are linearly dependent.
    pub fn is_parallel(&self, other: &BasisIndex) -> bool {
        let a = self.doubled();
        let b = other.doubled();
        a[0] * b[1] == a[1] * b[0] && a[0] * b[2] == a[2] * b[0] && a[1] * b[2] == a[2] * b[1]
    }
}

impl std::ops::Add for BasisIndex {
    type Output = BasisIndex;
    fn add(self, o: BasisIndex) -> BasisIndex {
        BasisIndex {
            l: self.l + o.l,
            m: self.m + o.m,
            r: self.r + o.r,
        }
    }
}

impl std::ops::Sub for BasisIndex {
    type Output = BasisIndex;
    fn sub(self, o: BasisIndex) -> BasisIndex {
        BasisIndex {
            l: self.l - o.l,
            m: self.m - o.m,
            r: self.r - o.r,
        }
    }
}

impl std::ops::Neg for BasisIndex {
    type Output = BasisIndex;
    fn neg(self) -> BasisIndex {
        BasisIndex {
            l: -self.l,
            m: -self.m,
            r: -self.r,
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[{},{};{}]", self.l, self.m, self.r)
    }
}

impl fmt::Debug for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A vector of `L`.
pub type Element = Combination<BasisIndex>;

pub fn basis(idx: BasisIndex) -> Element {
    Element::basis(idx)
}

pub fn unit() -> Element {
    Element::basis(BasisIndex::UNIT)
}

/// 8 * M(a1, a2, a3), computed on doubled indices by cofactor expansion
/// along the `r` row.
pub fn det_m_doubled(a1: &BasisIndex, a2: &BasisIndex, a3: &BasisIndex) -> i64 {
    let [l1, m1, r1] = a1.doubled();
    let [l2, m2, r2] = a2.doubled();
    let [l3, m3, r3] = a3.doubled();
    let minor = |a: i64, b: i64, c: i64, d: i64| a * d - b * c;
    r1 * minor(l2, l3, m2, m3) - r2 * minor(l1, l3, m1, m3) + r3 * minor(l1, l2, m1, m2)
}

/// The determinant `M(a1, a2, a3)` with rows `r`, `l`, `m`.
pub fn det_m(a1: &BasisIndex, a2: &BasisIndex, a3: &BasisIndex) -> Scalar {
    Scalar::from_rational(det_m_rational(a1, a2, a3))
}

pub fn det_m_rational(a1: &BasisIndex, a2: &BasisIndex, a3: &BasisIndex) -> Rational {
    rat(det_m_doubled(a1, a2, a3), 8)
}

/// Output index of a basis bracket: `a1 + a2 + a3 - nu`.
pub fn bracket_index(a1: &BasisIndex, a2: &BasisIndex, a3: &BasisIndex) -> BasisIndex {
    *a1 + *a2 + *a3 - BasisIndex::NU
}

/// A ternary multilinear bracket given by its values on basis triples.
pub trait ThreeBracket {
    type Basis: Ord + Clone;

    fn basis_bracket(
        &self,
        a: &Self::Basis,
        b: &Self::Basis,
        c: &Self::Basis,
    ) -> Combination<Self::Basis>;

    /// Trilinear extension of [`ThreeBracket::basis_bracket`].
    fn bracket(
        &self,
        x: &Combination<Self::Basis>,
        y: &Combination<Self::Basis>,
        z: &Combination<Self::Basis>,
    ) -> Combination<Self::Basis> {
        let mut out = Combination::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                if a == b {
                    continue;
                }
                let cab = ca * cb;
                for (c, cc) in z {
                    if c == a || c == b {
                        continue;
                    }
                    out.add_scaled(&self.basis_bracket(a, b, c), &(&cab * cc));
                }
            }
        }
        out
    }

    /// `[[x1,x2,x3],y2,y3] - ([[x1,y2,y3],x2,x3] + [x1,[x2,y2,y3],x3] + [x1,x2,[x3,y2,y3]])`.
    fn fi_residual(
        &self,
        x1: &Combination<Self::Basis>,
        x2: &Combination<Self::Basis>,
        x3: &Combination<Self::Basis>,
        y2: &Combination<Self::Basis>,
        y3: &Combination<Self::Basis>,
    ) -> Combination<Self::Basis> {
        let lhs = self.bracket(&self.bracket(x1, x2, x3), y2, y3);
        let t1 = self.bracket(&self.bracket(x1, y2, y3), x2, x3);
        let t2 = self.bracket(x1, &self.bracket(x2, y2, y3), x3);
        let t3 = self.bracket(x1, x2, &self.bracket(x3, y2, y3));
        &(&(&lhs - &t1) - &t2) - &t3
    }
}

/// The algebra `L` itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct Poisson;

impl ThreeBracket for Poisson {
    type Basis = BasisIndex;

    fn basis_bracket(&self, a: &BasisIndex, b: &BasisIndex, c: &BasisIndex) -> Element {
        let d = det_m_doubled(a, b, c);
        if d == 0 {
            return Element::zero();
        }
        Element::term(bracket_index(a, b, c), Scalar::from_rational(rat(d, 8)))
    }
}

/// The commutative associative product: bilinear extension of index addition.
pub fn mul(x: &Element, y: &Element) -> Element {
    x.bilinear(y, |a, b| Element::basis(*a + *b))
}

pub fn power(x: &Element, e: u32) -> Element {
    (0..e).fold(unit(), |acc, _| mul(&acc, x))
}

pub fn bracket(x: &Element, y: &Element, z: &Element) -> Element {
    Poisson.bracket(x, y, z)
}

/// The left multiplication `ad(x, y) = [x, y, -]`.
pub fn ad<'a>(x: &'a Element, y: &'a Element) -> impl Fn(&Element) -> Element + 'a {
    move |z| bracket(x, y, z)
}

pub fn fi_residual(
    x1: &Element,
    x2: &Element,
    x3: &Element,
    y2: &Element,
    y3: &Element,
) -> Element {
    Poisson.fi_residual(x1, x2, x3, y2, y3)
}

/// `[x1*x2, y2, y3] - [x1, y2, y3]*x2 - x1*[x2, y2, y3]`.
pub fn leibniz_residual(x1: &Element, x2: &Element, y2: &Element, y3: &Element) -> Element {
    let lhs = bracket(&mul(x1, x2), y2, y3);
    let a = mul(&bracket(x1, y2, y3), x2);
    let b = mul(x1, &bracket(x2, y2, y3));
    &(&lhs - &a) - &b
}
