//! Canonical Nambu realization: `X_{l,m}^r = y^l z^m e^{rx}` with the
//! Jacobian 3-bracket in the coordinates `(x, y, z)`.
//!
//! Everything is symbolic. The Jacobian is expanded over the six
//! permutations of `S_3`, which is deliberately a different route from the
//! cofactor expansion used by [`crate::algebra::det_m`].

use std::fmt;

use crate::algebra::{self, BasisIndex, Element};
use crate::combination::Combination;
use crate::halfint::HalfInt;
use crate::scalars::Scalar;

/// `y^l z^m e^{r x}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub l: HalfInt,
    pub m: HalfInt,
    pub r: HalfInt,
}

impl Monomial {
    pub fn new(l: HalfInt, m: HalfInt, r: HalfInt) -> Self {
        Monomial { l, m, r }
    }

    pub fn times(&self, o: &Monomial) -> Monomial {
        Monomial {
            l: self.l + o.l,
            m: self.m + o.m,
            r: self.r + o.r,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^{{{}}} z^{{{}}} e^{{{} x}}", self.l, self.m, self.r)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

/// A coefficient times a monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scaled {
    pub coeff: Scalar,
    pub mono: Monomial,
}

impl Scaled {
    pub fn new(coeff: Scalar, mono: Monomial) -> Self {
        Scaled { coeff, mono }
    }

    pub fn times(&self, o: &Scaled) -> Scaled {
        Scaled {
            coeff: &self.coeff * &o.coeff,
            mono: self.mono.times(&o.mono),
        }
    }
}

/// Finite sums of scaled monomials.
pub type NambuPoly = Combination<Monomial>;

pub fn partial(axis: Axis, t: &Scaled) -> Scaled {
    let Monomial { l, m, r } = t.mono;
    let (factor, mono) = match axis {
        Axis::X => (r, t.mono),
        Axis::Y => (
            l,
            Monomial {
                l: l - HalfInt::ONE,
                m,
                r,
            },
        ),
        Axis::Z => (
            m,
            Monomial {
                l,
                m: m - HalfInt::ONE,
                r,
            },
        ),
    };
    Scaled {
        coeff: t.coeff.scale(&factor.to_rational()),
        mono,
    }
}

// (permutation of rows assigned to columns 0,1,2; sign)
const PERMUTATIONS: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([0, 2, 1], -1),
    ([2, 1, 0], -1),
    ([1, 0, 2], -1),
];

/// `det(d f_j / d x_i)` with rows `x, y, z` and columns `t1, t2, t3`,
/// expanded as `sum_sigma sgn(sigma) prod_j D_{sigma(j)} t_j`.
pub fn jacobian_bracket(t1: &Scaled, t2: &Scaled, t3: &Scaled) -> NambuPoly {
    let cols = [t1, t2, t3];
    let mut out = NambuPoly::zero();
    for (perm, sign) in PERMUTATIONS {
        let mut prod = Scaled::new(
            Scalar::from_int(sign),
            Monomial::new(HalfInt::ZERO, HalfInt::ZERO, HalfInt::ZERO),
        );
        for (j, col) in cols.iter().enumerate() {
            prod = prod.times(&partial(AXES[perm[j]], col));
        }
        out.add_term(prod.mono, prod.coeff);
    }
    out
}

/// Trilinear extension of [`jacobian_bracket`] to polynomials.
pub fn jacobian_bracket_poly(x: &NambuPoly, y: &NambuPoly, z: &NambuPoly) -> NambuPoly {
    let mut out = NambuPoly::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            for (c, cc) in z {
                let t = jacobian_bracket(
                    &Scaled::new(ca.clone(), *a),
                    &Scaled::new(cb.clone(), *b),
                    &Scaled::new(cc.clone(), *c),
                );
                out = out + t;
            }
        }
    }
    out
}

pub fn poly_mul(x: &NambuPoly, y: &NambuPoly) -> NambuPoly {
    x.bilinear(y, |a, b| NambuPoly::basis(a.times(b)))
}

/// The isomorphism `chi: L_{l,m}^r -> X_{l,m}^r`.
pub fn chi(x: &Element) -> NambuPoly {
    x.map_linear(|b| NambuPoly::basis(Monomial::new(b.l, b.m, b.r)))
}

pub fn chi_inverse(p: &NambuPoly) -> Element {
    p.map_linear(|mono| Element::basis(BasisIndex::new(mono.l, mono.m, mono.r)))
}

fn x_of(a: &BasisIndex) -> Scaled {
    Scaled::new(Scalar::one(), Monomial::new(a.l, a.m, a.r))
}

/// True iff `chi` carries both the bracket and the product of the three
/// basis vectors (all pairs) to their Nambu counterparts.
pub fn chi_check(a1: &BasisIndex, a2: &BasisIndex, a3: &BasisIndex) -> bool {
    let (l1, l2, l3) = (
        Element::basis(*a1),
        Element::basis(*a2),
        Element::basis(*a3),
    );
    let lhs = jacobian_bracket(&x_of(a1), &x_of(a2), &x_of(a3));
    if lhs != chi(&algebra::bracket(&l1, &l2, &l3)) {
        return false;
    }
    let pairs = [(&l1, &l2), (&l2, &l3), (&l1, &l3)];
    pairs
        .iter()
        .all(|(p, q)| poly_mul(&chi(p), &chi(q)) == chi(&algebra::mul(p, q)))
}

/// Jacobian of three unit monomials by the same permutation expansion, in
/// exact integers: returns `8 * coefficient` and the monomial of each of the
/// six terms, `None` if the terms disagree on the monomial.
pub fn jacobian_unit_doubled(t: [&Monomial; 3]) -> Option<(i64, Monomial)> {
    let mut total = 0i64;
    let mut mono: Option<Monomial> = None;
    for (perm, sign) in PERMUTATIONS {
        let mut coeff = sign;
        let mut acc = Monomial::new(HalfInt::ZERO, HalfInt::ZERO, HalfInt::ZERO);
        for (j, col) in t.iter().enumerate() {
            let (factor, m) = match AXES[perm[j]] {
                Axis::X => (col.r, **col),
                Axis::Y => (
                    col.l,
                    Monomial {
                        l: col.l - HalfInt::ONE,
                        ..**col
                    },
                ),
                Axis::Z => (
                    col.m,
                    Monomial {
                        m: col.m - HalfInt::ONE,
                        ..**col
                    },
                ),
            };
            coeff *= factor.doubled();
            acc = acc.times(&m);
        }
        if *mono.get_or_insert(acc) != acc {
            return None;
        }
        total += coeff;
    }
    mono.map(|m| (total, m))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ChiWindowReport {
    pub window: String,
    pub basis_vectors: usize,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    pub passed: bool,
    pub first_failure: Option<String>,
}

/// Exhaustive check that `chi` is a bijection on the window's basis, carries
/// every product of two basis vectors, and carries every bracket of three
/// distinct basis vectors (integer permutation expansion against the
/// cofactor determinant and index rule).
pub fn chi_check_window(window: HalfInt) -> ChiWindowReport {
    use rayon::prelude::*;
    let idx: Vec<BasisIndex> = BasisIndex::window(window).collect();
    let monos: Vec<Monomial> = idx.iter().map(|a| Monomial::new(a.l, a.m, a.r)).collect();
    let n = idx.len();
    let mut failure: Option<String> = None;
    for (a, m) in idx.iter().zip(&monos) {
        let back = chi_inverse(&NambuPoly::basis(*m));
        if back != Element::basis(*a) && failure.is_none() {
            failure = Some(format!("chi roundtrip at {a}"));
        }
    }
    let pair_fail = (0..n).into_par_iter().find_map_first(|i| {
        (i..n).find_map(|j| {
            let p = poly_mul(&NambuPoly::basis(monos[i]), &NambuPoly::basis(monos[j]));
            let q = chi(&algebra::mul(
                &Element::basis(idx[i]),
                &Element::basis(idx[j]),
            ));
            (p != q).then(|| format!("product {} . {}", idx[i], idx[j]))
        })
    });
    let triple_fail = (0..n).into_par_iter().find_map_first(|i| {
        for j in i + 1..n {
            for k in j + 1..n {
                let ok = match jacobian_unit_doubled([&monos[i], &monos[j], &monos[k]]) {
                    Some((c, m)) => {
                        let d = algebra::det_m_doubled(&idx[i], &idx[j], &idx[k]);
                        let b = algebra::bracket_index(&idx[i], &idx[j], &idx[k]);
                        c == d && (c == 0 || (m.l, m.m, m.r) == (b.l, b.m, b.r))
                    }
                    None => false,
                };
                if !ok {
                    return Some(format!("bracket [{}, {}, {}]", idx[i], idx[j], idx[k]));
                }
            }
        }
        None
    });
    let failure = failure.or(pair_fail).or(triple_fail);
    let n64 = n as u64;
    ChiWindowReport {
        window: window.to_string(),
        basis_vectors: n,
        pairs_checked: n64 * (n64 + 1) / 2,
        triples_checked: n64 * (n64 - 1) * (n64 - 2) / 6,
        passed: failure.is_none(),
        first_failure: failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(l: i64, m: i64, r: i64) -> Monomial {
        Monomial::new(
            HalfInt::from_doubled(l),
            HalfInt::from_doubled(m),
            HalfInt::from_doubled(r),
        )
    }

    fn one(m: Monomial) -> Scaled {
        Scaled::new(Scalar::one(), m)
    }

    #[test]
    fn partial_examples() {
        assert_eq!(
            partial(Axis::Y, &one(mono(4, 0, 0))),
            Scaled::new(Scalar::from_int(2), mono(2, 0, 0))
        );
        assert_eq!(
            partial(Axis::X, &one(mono(1, 2, 3))),
            Scaled::new(Scalar::from_ratio(3, 2), mono(1, 2, 3))
        );
        assert!(partial(Axis::Z, &one(mono(2, 0, 2))).coeff.is_zero());
    }

    #[test]
    fn jacobian_examples() {
        let out = jacobian_bracket(
            &one(mono(0, 2, 2)),
            &one(mono(0, 2, 6)),
            &one(mono(2, 0, -4)),
        );
        assert_eq!(out, NambuPoly::term(mono(0, 2, 4), Scalar::from_int(2)));
        assert!(jacobian_bracket(
            &one(mono(1, 2, 3)),
            &one(mono(1, 2, 3)),
            &one(mono(2, 0, 1))
        )
        .is_zero());
        let out = jacobian_bracket(
            &one(mono(2, 0, 1)),
            &one(mono(0, 1, 0)),
            &one(mono(2, 2, 2)),
        );
        assert_eq!(
            out,
            NambuPoly::term(mono(2, 1, 3), Scalar::from_ratio(1, 4))
        );
    }

    #[test]
    fn chi_on_center_and_window() {
        let u = BasisIndex::UNIT;
        assert!(chi_check(
            &u,
            &BasisIndex::ints(1, 2, 0),
            &BasisIndex::from_doubled(1, -1, 3)
        ));
        let w: Vec<_> = BasisIndex::window(HalfInt::ONE).step_by(11).collect();
        for a in &w {
            for b in &w {
                for c in &w {
                    assert!(chi_check(a, b, c), "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn monomial_display() {
        assert_eq!(mono(1, 2, 3).to_string(), "y^{1/2} z^{1} e^{3/2 x}");
    }

    #[test]
    fn window_check_small() {
        let rep = chi_check_window(HalfInt::ONE);
        assert!(rep.passed, "{:?}", rep.first_failure);
        assert_eq!(rep.basis_vectors, 125);
        assert_eq!(rep.triples_checked, 125 * 124 * 123 / 6);
    }
}
