//! The four classical infinite-dimensional 3-Lie algebras, each on its own
//! basis: the 3-Virasoro-Witt algebra `W3(z)`, `A_w^d`, `A_w` and 3-`W_inf`.
//!
//! Only representative argument orders of each relation family are given by
//! the defining tables; every other order follows by total skew-symmetry.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::ThreeBracket;
use crate::combination::Combination;
use crate::error::Error;
use crate::scalars::Scalar;

pub(crate) fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Sorts three arguments by `key`, returning them with the sign of the
/// sorting permutation.
fn sort3<B: Copy, K: Ord>(args: [B; 3], key: impl Fn(&B) -> K) -> ([B; 3], i64) {
    let mut v = args;
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if key(&v[j]) > key(&v[j + 1]) {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (v, sign)
}

// ---------------------------------------------------------------------------
// 3-Virasoro-Witt

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum W3Basis {
    Q(i64),
    R(i64),
}

impl W3Basis {
    fn is_q(&self) -> bool {
        matches!(self, W3Basis::Q(_))
    }

    fn index(&self) -> i64 {
        match *self {
            W3Basis::Q(n) | W3Basis::R(n) => n,
        }
    }
}

impl fmt::Display for W3Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            W3Basis::Q(n) => write!(f, "Q_{n}"),
            W3Basis::R(n) => write!(f, "R_{n}"),
        }
    }
}

/// `W3(z)`:
///
/// ```text
/// [Q_k, Q_m, Q_n] = (k-m)(m-n)(k-n) R_{k+m+n}
/// [Q_p, Q_q, R_k] = (p-q)(Q_{k+p+q} + z k R_{k+p+q})
/// [Q_p, R_q, R_k] = (k-q) R_{k+p+q}
/// [R_p, R_q, R_k] = 0
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W3 {
    pub z: Scalar,
}

impl W3 {
    pub fn new(z: Scalar) -> Self {
        W3 { z }
    }

    /// `Q_n, R_n` for `n` in `[-window, window]`.
    pub fn basis_window(window: i64) -> Vec<W3Basis> {
        let w = window.abs();
        (-w..=w)
            .map(W3Basis::Q)
            .chain((-w..=w).map(W3Basis::R))
            .collect()
    }
}

impl ThreeBracket for W3 {
    type Basis = W3Basis;

    fn basis_bracket(&self, a: &W3Basis, b: &W3Basis, c: &W3Basis) -> Combination<W3Basis> {
        // Q sorts before R
        let ([x, y, w], sign) = sort3([*a, *b, *c], |v| !v.is_q());
        let s = Scalar::from_int(sign);
        let (p, q, k) = (x.index(), y.index(), w.index());
        let sum = p + q + k;
        match (x.is_q(), y.is_q(), w.is_q()) {
            (true, true, true) => Combination::term(
                W3Basis::R(sum),
                &s * &Scalar::from_int((p - q) * (q - k) * (p - k)),
            ),
            (true, true, false) => {
                let pq = Scalar::from_int(p - q);
                let mut out = Combination::term(W3Basis::Q(sum), Scalar::one());
                out.add_term(W3Basis::R(sum), self.z.scale(&crate::scalars::int(k)));
                out.scale(&(&s * &pq))
            }
            (true, false, false) => {
                Combination::term(W3Basis::R(sum), &s * &Scalar::from_int(k - q))
            }
            _ => Combination::zero(),
        }
    }
}

/// An element of `W3(z)` that remembers its structure parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W3Element {
    pub z: Scalar,
    pub terms: Combination<W3Basis>,
}

impl W3Element {
    pub fn new(z: Scalar, terms: Combination<W3Basis>) -> Self {
        W3Element { z, terms }
    }
}

pub fn w3_bracket(x: &W3Element, y: &W3Element, w: &W3Element) -> Result<W3Element, Error> {
    for other in [&y.z, &w.z] {
        if *other != x.z {
            return Err(Error::MismatchedParameter(
                x.z.to_string(),
                other.to_string(),
            ));
        }
    }
    let alg = W3::new(x.z.clone());
    Ok(W3Element::new(
        x.z.clone(),
        alg.bracket(&x.terms, &y.terms, &w.terms),
    ))
}

/// First basis quintuple (in scan order) whose fundamental-identity residual
/// is nonzero. Arguments are scanned as `x1 < x2 < x3`, `y2 < y3`, which is
/// exhaustive because the residual is skew in both groups.
pub fn fi_scan<A>(alg: &A, basis: &[A::Basis]) -> Option<[A::Basis; 5]>
where
    A: ThreeBracket + Sync,
    A::Basis: Send + Sync,
{
    let n = basis.len();
    let triples: Vec<[usize; 3]> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
        .collect();
    triples.par_iter().find_map_first(|&[i, j, k]| {
        let e = |t: usize| Combination::basis(basis[t].clone());
        let (x1, x2, x3) = (e(i), e(j), e(k));
        for p in 0..n {
            for q in p + 1..n {
                if !alg.fi_residual(&x1, &x2, &x3, &e(p), &e(q)).is_zero() {
                    return Some([
                        basis[i].clone(),
                        basis[j].clone(),
                        basis[k].clone(),
                        basis[p].clone(),
                        basis[q].clone(),
                    ]);
                }
            }
        }
        None
    })
}

pub fn w3_fi_scan(z: &Scalar, window: i64) -> Option<[W3Basis; 5]> {
    fi_scan(&W3::new(z.clone()), &W3::basis_window(window))
}

// ---------------------------------------------------------------------------
// A_w^d

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AwdBasis {
    S(i64),
    T(i64),
}

impl AwdBasis {
    fn is_s(&self) -> bool {
        matches!(self, AwdBasis::S(_))
    }

    fn index(&self) -> i64 {
        match *self {
            AwdBasis::S(n) | AwdBasis::T(n) => n,
        }
    }
}

impl fmt::Display for AwdBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AwdBasis::S(n) => write!(f, "S_{n}"),
            AwdBasis::T(n) => write!(f, "T_{n}"),
        }
    }
}

/// ```text
/// [S_l, S_m, T_n] = (m-l) S_{l+m-n}
/// [S_l, T_m, T_n] = (n-m) T_{m+n-l}
/// ```
/// with `[S,S,S] = [T,T,T] = 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Awd;

impl Awd {
    pub fn basis_window(window: i64) -> Vec<AwdBasis> {
        let w = window.abs();
        (-w..=w)
            .map(AwdBasis::S)
            .chain((-w..=w).map(AwdBasis::T))
            .collect()
    }
}

impl ThreeBracket for Awd {
    type Basis = AwdBasis;

    fn basis_bracket(&self, a: &AwdBasis, b: &AwdBasis, c: &AwdBasis) -> Combination<AwdBasis> {
        let ([x, y, w], sign) = sort3([*a, *b, *c], |v| !v.is_s());
        let (l, m, n) = (x.index(), y.index(), w.index());
        match (x.is_s(), y.is_s(), w.is_s()) {
            (true, true, false) => {
                Combination::term(AwdBasis::S(l + m - n), Scalar::from_int(sign * (m - l)))
            }
            (true, false, false) => {
                Combination::term(AwdBasis::T(m + n - l), Scalar::from_int(sign * (n - m)))
            }
            _ => Combination::zero(),
        }
    }
}

// ---------------------------------------------------------------------------
// A_w

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AwBasis(pub i64);

impl fmt::Display for AwBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U_{}", self.0)
    }
}

pub(crate) fn parity_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `det [[(-1)^l, (-1)^m, (-1)^n], [1, 1, 1], [l, m, n]]`.
pub fn aw_det(l: i64, m: i64, n: i64) -> i64 {
    det3([
        [parity_sign(l), parity_sign(m), parity_sign(n)],
        [1, 1, 1],
        [l, m, n],
    ])
}

/// `(-1)^l + (-1)^m + (-1)^n == (-1)^(l+m+n-1)` whenever `aw_det` is nonzero.
pub fn aw_parity_holds(l: i64, m: i64, n: i64) -> bool {
    aw_det(l, m, n) == 0
        || parity_sign(l) + parity_sign(m) + parity_sign(n) == parity_sign(l + m + n - 1)
}

/// `[U_l, U_m, U_n] = aw_det(l, m, n) U_{l+m+n-1}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Aw;

impl Aw {
    pub fn basis_window(window: i64) -> Vec<AwBasis> {
        let w = window.abs();
        (-w..=w).map(AwBasis).collect()
    }
}

impl ThreeBracket for Aw {
    type Basis = AwBasis;

    fn basis_bracket(&self, a: &AwBasis, b: &AwBasis, c: &AwBasis) -> Combination<AwBasis> {
        let d = aw_det(a.0, b.0, c.0);
        if d == 0 {
            return Combination::zero();
        }
        Combination::term(AwBasis(a.0 + b.0 + c.0 - 1), Scalar::from_int(d))
    }
}

// ---------------------------------------------------------------------------
// 3-W_inf

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WinfBasis {
    pub m: i64,
    pub r: i64,
}

impl fmt::Display for WinfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{}^{}", self.m, self.r)
    }
}

/// `[W_{m1}^{r1}, W_{m2}^{r2}, W_{m3}^{r3}] = det[[1,1,1],[m],[r]] W_{m1+m2+m3+1}^{r1+r2+r3}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Winf;

impl Winf {
    pub fn basis_window(window: i64) -> Vec<WinfBasis> {
        let w = window.abs();
        (-w..=w)
            .flat_map(|m| (-w..=w).map(move |r| WinfBasis { m, r }))
            .collect()
    }
}

impl ThreeBracket for Winf {
    type Basis = WinfBasis;

    fn basis_bracket(&self, a: &WinfBasis, b: &WinfBasis, c: &WinfBasis) -> Combination<WinfBasis> {
        let d = det3([[1, 1, 1], [a.m, b.m, c.m], [a.r, b.r, c.r]]);
        if d == 0 {
            return Combination::zero();
        }
        Combination::term(
            WinfBasis {
                m: a.m + b.m + c.m + 1,
                r: a.r + b.r + c.r,
            },
            Scalar::from_int(d),
        )
    }
}

pub type AwdElement = Combination<AwdBasis>;
pub type AwElement = Combination<AwBasis>;
pub type WinfElement = Combination<WinfBasis>;
