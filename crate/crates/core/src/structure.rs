//! Finite-scale structure theory of `L`: the center `C0 = F L_{0,0}^0`,
//! ideal-reachability certificates in `L / C0`, support reduction, the
//! abelian subalgebra `H = span{L_{i,i}^t}`, weight spaces of
//! `ad(L_{i,i}^t, L_{1-i,1-i}^{-t})`, and words in the six generators.

use serde::Serialize;

use crate::algebra::{self, basis, bracket, det_m, det_m_doubled, BasisIndex, Element};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::scalars::Scalar;

// ---------------------------------------------------------------------------
// center and cosets

/// An element of `L / C0`, stored through the representative with no unit
/// term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    rep: Element,
}

impl Coset {
    pub fn new(mut rep: Element) -> Self {
        rep.remove(&BasisIndex::UNIT);
        Coset { rep }
    }

    pub fn of_basis(idx: BasisIndex) -> Self {
        Coset::new(basis(idx))
    }

    pub fn representative(&self) -> &Element {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    /// `[self, x, y] + C0`.
    pub fn bracket_with(&self, x: &Element, y: &Element) -> Coset {
        Coset::new(bracket(&self.rep, x, y))
    }
}

/// Unit vectors along `l`, `m`, `r`.
fn axis_vectors() -> [BasisIndex; 3] {
    [
        BasisIndex::ints(1, 0, 0),
        BasisIndex::ints(0, 1, 0),
        BasisIndex::ints(0, 0, 1),
    ]
}

/// A basis pair `(e_i, e_j)` with `[x, e_i, e_j] != 0`, if any exists.
///
/// Distinct support indices of `x` are sent to distinct outputs by
/// `[-, e_i, e_j]`, so no cancellation can occur and it suffices to find one
/// support index `a` with `M(a, e_i, e_j) != 0`; for `a != 0` one pair of
/// axis vectors always works.
pub fn central_witness(x: &Element) -> Option<(BasisIndex, BasisIndex)> {
    let axes = axis_vectors();
    for i in 0..3 {
        for j in i + 1..3 {
            let (ei, ej) = (basis(axes[i]), basis(axes[j]));
            if !bracket(x, &ei, &ej).is_zero() {
                return Some((axes[i], axes[j]));
            }
        }
    }
    None
}

/// True iff `x` brackets to zero with every basis pair; equivalently `x`
/// lies on the line spanned by the unit.
pub fn is_central(x: &Element) -> bool {
    let on_unit_line = x.support().all(BasisIndex::is_unit);
    let witness = central_witness(x);
    debug_assert_eq!(on_unit_line, witness.is_none());
    witness.is_none() && on_unit_line
}

// ---------------------------------------------------------------------------
// reachability certificates

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachStep {
    pub x: Element,
    pub y: Element,
    /// The determinant contributed by this step.
    pub det: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachCertificate {
    pub source: BasisIndex,
    pub target: BasisIndex,
    pub steps: Vec<ReachStep>,
}

impl ReachCertificate {
    /// Replays the steps from the source coset with the given bracket.
    pub fn replay_with(&self, br: impl Fn(&Element, &Element, &Element) -> Element) -> Coset {
        let mut cur = Coset::of_basis(self.source);
        for s in &self.steps {
            cur = Coset::new(br(cur.representative(), &s.x, &s.y));
        }
        cur
    }

    pub fn replay(&self) -> Coset {
        self.replay_with(algebra::bracket)
    }

    /// True iff replay lands on a nonzero multiple of the target coset.
    pub fn verify(&self) -> bool {
        lands_on(&self.replay(), &self.target)
    }
}

pub fn lands_on(c: &Coset, target: &BasisIndex) -> bool {
    matches!(c.representative().as_single(), Some((idx, k)) if idx == target && !k.is_zero())
}

/// Shift vectors with doubled components in `[-w, w]`, ordered by max-norm
/// and then lexicographically, skipping zero.
fn shells(w: i64) -> Vec<BasisIndex> {
    let mut v: Vec<BasisIndex> = (-w..=w)
        .flat_map(|a| {
            (-w..=w).flat_map(move |b| (-w..=w).map(move |c| BasisIndex::from_doubled(a, b, c)))
        })
        .filter(|i| !i.is_unit())
        .collect();
    v.sort_by_key(|i| (i.doubled().iter().map(|d| d.abs()).max().unwrap_or(0), *i));
    v
}

const REACH_SEARCH: i64 = 6;

/// The bracket output index `(-1, -1, 0)` requires `a1 + a2 + a3 = 0`, which
/// forces `M(a1, a2, a3) = 0`: `L_{-1,-1}^0` never occurs in `[L, L, L]`.
pub fn outside_bracket_image(idx: &BasisIndex) -> bool {
    *idx + BasisIndex::NU == BasisIndex::UNIT
}

fn one_step(source: &BasisIndex, target: &BasisIndex) -> Option<ReachStep> {
    let shifted = *target + BasisIndex::NU;
    if source.is_parallel(&shifted) {
        return None;
    }
    for sigma in shells(REACH_SEARCH) {
        if det_m_doubled(source, &sigma, &shifted) == 0 {
            continue;
        }
        let x = *source + sigma;
        let y = *target - source.scale(2) - sigma + BasisIndex::NU;
        let det = det_m(source, &x, &y);
        debug_assert_eq!(det, det_m(source, &sigma, &shifted));
        return Some(ReachStep {
            x: basis(x),
            y: basis(y),
            det,
        });
    }
    None
}

/// A certificate that the ideal generated by `L_source + C0` contains
/// `L_target + C0`.
pub fn reach(source: BasisIndex, target: BasisIndex) -> Result<ReachCertificate> {
    let err = || Error::NoCertificate {
        source_index: source,
        target,
    };
    if source.is_unit() {
        return Err(Error::Precondition("source lies in the center".into()));
    }
    if target.is_unit() {
        return Err(Error::Precondition("target lies in the center".into()));
    }
    if source == target {
        return Ok(ReachCertificate {
            source,
            target,
            steps: vec![],
        });
    }
    if outside_bracket_image(&target) {
        return Err(err());
    }
    if let Some(step) = one_step(&source, &target) {
        return Ok(ReachCertificate {
            source,
            target,
            steps: vec![step],
        });
    }
    // (l+1, m+1, r) parallel to the source: go through an intermediate index
    for mid in shells(4) {
        if outside_bracket_image(&mid) {
            continue;
        }
        if let (Some(a), Some(b)) = (one_step(&source, &mid), one_step(&mid, &target)) {
            return Ok(ReachCertificate {
                source,
                target,
                steps: vec![a, b],
            });
        }
    }
    Err(err())
}

// ---------------------------------------------------------------------------
// support reduction

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub result: Coset,
    /// Bracket steps `(x, y)` applied in order: `u -> [u, x, y] + C0`.
    pub steps: Vec<(Element, Element)>,
}

const R0_SEARCH: i64 = 8;
const PAIR_SEARCH: i64 = 2;

fn reduces(u: &Coset, x: &Element, y: &Element) -> Option<Coset> {
    let out = u.bracket_with(x, y);
    (!out.is_zero() && out.len() < u.len()).then_some(out)
}

/// The pivot pair `(L_{a_j}, L_{(1 - l_j, 1 - m_j, r0)})`.
fn pivot_step(u: &Coset) -> Option<(Coset, Element, Element)> {
    let mut pivots: Vec<BasisIndex> = u.representative().support().copied().collect();
    pivots.reverse();
    let r0s = (1..=R0_SEARCH)
        .flat_map(|d| [d, -d])
        .map(HalfInt::from_doubled);
    for r0 in r0s {
        for p in &pivots {
            let x = basis(*p);
            let y = basis(BasisIndex::new(HalfInt::ONE - p.l, HalfInt::ONE - p.m, r0));
            if let Some(out) = reduces(u, &x, &y) {
                return Some((out, x, y));
            }
        }
    }
    None
}

fn pair_step(u: &Coset) -> Option<(Coset, Element, Element)> {
    let cands = shells(PAIR_SEARCH);
    for g in &cands {
        for b in &cands {
            if g >= b {
                continue;
            }
            let (x, y) = (basis(*g), basis(*b));
            if let Some(out) = reduces(u, &x, &y) {
                return Some((out, x, y));
            }
        }
    }
    None
}

fn reduce_once(u: &Coset) -> Option<(Coset, Element, Element)> {
    pivot_step(u).or_else(|| pair_step(u))
}

/// Brackets `u` (at least two terms) into a nonzero coset with strictly
/// smaller support.
///
/// Tries the pivot pair first, then any basis pair in a small window. When
/// every term lies on one line through the origin no single basis bracket
/// can shrink the support; a first bracket then moves the support off that
/// line.
pub fn reduce_support(u: &Coset) -> Result<Reduction> {
    if u.len() < 2 {
        return Err(Error::Precondition(format!(
            "reduce_support needs at least two terms, got {}",
            u.len()
        )));
    }
    if let Some((result, x, y)) = reduce_once(u) {
        return Ok(Reduction {
            result,
            steps: vec![(x, y)],
        });
    }
    let cands = shells(PAIR_SEARCH);
    for g in &cands {
        for b in &cands {
            if g >= b {
                continue;
            }
            let (x, y) = (basis(*g), basis(*b));
            let spread = u.bracket_with(&x, &y);
            if spread.len() != u.len() {
                continue;
            }
            if let Some((result, x2, y2)) = reduce_once(&spread) {
                return Ok(Reduction {
                    result,
                    steps: vec![(x, y), (x2, y2)],
                });
            }
        }
    }
    Err(Error::Precondition(format!(
        "no reducing bracket found for {}",
        u.representative()
    )))
}

/// Applies [`reduce_support`] until one term remains.
pub fn reduce_to_single(u: &Coset) -> Result<Vec<Reduction>> {
    let mut cur = u.clone();
    let mut out = Vec::new();
    while cur.len() > 1 {
        let r = reduce_support(&cur)?;
        cur = r.result.clone();
        out.push(r);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// the subalgebra H

pub fn in_h_index(idx: &BasisIndex) -> bool {
    idx.l == idx.m
}

pub fn in_h(x: &Element) -> bool {
    x.support().all(in_h_index)
}

/// Basis vectors of `H` with `|i|, |t| <= window`.
pub fn h_basis(window: HalfInt) -> Vec<BasisIndex> {
    HalfInt::window(window)
        .flat_map(|i| HalfInt::window(window).map(move |t| BasisIndex::new(i, i, t)))
        .collect()
}

/// For `L_{l,m}^r` outside `H`, a pair `h1, h2` in `H` with
/// `[L_{l,m}^r, h1, h2]` outside `H`.
pub fn h_witness(idx: &BasisIndex, window: HalfInt) -> Option<(BasisIndex, BasisIndex)> {
    if in_h_index(idx) {
        return None;
    }
    let hb = h_basis(window);
    for a in &hb {
        for b in &hb {
            let out = bracket(&basis(*idx), &basis(*a), &basis(*b));
            if !out.is_zero() && !in_h(&out) {
                return Some((*a, *b));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HReport {
    pub window: String,
    pub h_basis_size: usize,
    pub product_closed: bool,
    pub bracket_vanishes: bool,
    pub non_h_vectors: usize,
    pub bracket_witnesses: usize,
    pub product_witnesses: usize,
    pub passed: bool,
}

/// Exhaustive check on the window that `H.H` is in `H`, `[H,H,H] = 0`, and
/// that every non-`H` basis vector has witnesses for both biconditionals
/// (`[L, H, H]` leaves `H`; `L . H` leaves `H`).
pub fn h_closure_checks(window: HalfInt) -> HReport {
    use rayon::prelude::*;
    let hb = h_basis(window);
    let product_closed = hb.iter().all(|a| hb.iter().all(|b| in_h_index(&(*a + *b))));
    let n = hb.len();
    let bracket_vanishes = (0..n).into_par_iter().all(|i| {
        (i + 1..n).all(|j| (j + 1..n).all(|k| det_m_doubled(&hb[i], &hb[j], &hb[k]) == 0))
    });
    let non_h: Vec<BasisIndex> = BasisIndex::window(window)
        .filter(|i| !in_h_index(i))
        .collect();
    let bracket_witnesses = non_h
        .par_iter()
        .filter(|i| h_witness(i, window).is_some())
        .count();
    let product_witnesses = non_h
        .iter()
        .filter(|i| hb.iter().any(|h| !in_h_index(&(**i + *h))))
        .count();
    let passed = product_closed
        && bracket_vanishes
        && bracket_witnesses == non_h.len()
        && product_witnesses == non_h.len();
    HReport {
        window: window.to_string(),
        h_basis_size: n,
        product_closed,
        bracket_vanishes,
        non_h_vectors: non_h.len(),
        bracket_witnesses,
        product_witnesses,
        passed,
    }
}

// ---------------------------------------------------------------------------
// weight spaces

/// The eigenvalue `t (m - l)` of `ad(L_{i,i}^t, L_{1-i,1-i}^{-t})` on
/// `L_{l,m}^r`; it does not depend on `i`.
pub fn weight_of(t: HalfInt, _i: HalfInt, idx: &BasisIndex) -> Scalar {
    Scalar::from_rational(t.to_rational() * (idx.m - idx.l).to_rational())
}

/// `ad(L_{i,i}^t, L_{1-i,1-i}^{-t})(L_idx)` computed with the bracket.
pub fn weight_operator(t: HalfInt, i: HalfInt, idx: &BasisIndex) -> Element {
    let a = basis(BasisIndex::new(i, i, t));
    let b = basis(BasisIndex::new(HalfInt::ONE - i, HalfInt::ONE - i, -t));
    bracket(&a, &b, &basis(*idx))
}

pub fn weight_matches(t: HalfInt, i: HalfInt, idx: &BasisIndex) -> bool {
    weight_operator(t, i, idx) == basis(*idx).scale(&weight_of(t, i, idx))
}

// ---------------------------------------------------------------------------
// generators

/// `L_{0,0}^{-1}, L_{-1,0}^0, L_{0,-1}^0, L_{0,0}^{1/2}, L_{1/2,0}^0, L_{0,1/2}^0`.
pub const GENERATORS: [BasisIndex; 6] = [
    BasisIndex::from_doubled(0, 0, -2),
    BasisIndex::from_doubled(-2, 0, 0),
    BasisIndex::from_doubled(0, -2, 0),
    BasisIndex::from_doubled(0, 0, 1),
    BasisIndex::from_doubled(1, 0, 0),
    BasisIndex::from_doubled(0, 1, 0),
];

/// Multiplicities of the six generators; the word is their product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GeneratorWord {
    pub exponents: [u64; 6],
}

impl GeneratorWord {
    pub fn evaluate(&self) -> Element {
        let mut acc = algebra::unit();
        for (g, e) in GENERATORS.iter().zip(self.exponents) {
            acc = algebra::mul(&acc, &algebra::power(&basis(*g), e as u32));
        }
        acc
    }

    /// The index reached, computed from the exponents without multiplying.
    pub fn index(&self) -> BasisIndex {
        GENERATORS
            .iter()
            .zip(self.exponents)
            .fold(BasisIndex::UNIT, |acc, (g, e)| acc + g.scale(e as i64))
    }

    /// Nonzero exponents keyed by the generator's printed form.
    pub fn nonzero(&self) -> Vec<(BasisIndex, u64)> {
        GENERATORS
            .iter()
            .copied()
            .zip(self.exponents)
            .filter(|(_, e)| *e > 0)
            .collect()
    }
}

/// Exponents `(negative-unit generator, half generator)` for one axis value.
fn axis_exponents(v: HalfInt) -> (u64, u64) {
    let d = v.doubled();
    if d > 0 {
        (0, d as u64)
    } else if d == 0 {
        (0, 0)
    } else if v.is_integer() {
        ((-d / 2) as u64, 0)
    } else {
        ((-d) as u64, (-d) as u64)
    }
}

/// Writes `L_idx` as a product of generators, axis by axis.
pub fn decompose(idx: &BasisIndex) -> GeneratorWord {
    let (rn, rh) = axis_exponents(idx.r);
    let (ln, lh) = axis_exponents(idx.l);
    let (mn, mh) = axis_exponents(idx.m);
    GeneratorWord {
        exponents: [rn, ln, mn, rh, lh, mh],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(l: i64, m: i64, r: i64) -> BasisIndex {
        BasisIndex::from_doubled(l, m, r)
    }

    #[test]
    fn center_examples() {
        assert!(is_central(&algebra::unit()));
        assert!(is_central(&Element::zero()));
        let x = basis(BasisIndex::ints(1, 1, 0));
        assert!(!is_central(&x));
        let w = bracket(
            &x,
            &basis(BasisIndex::ints(0, 1, 1)),
            &basis(BasisIndex::ints(1, 0, 0)),
        );
        assert!(!w.is_zero());
    }

    #[test]
    fn reach_examples() {
        let c = reach(BasisIndex::ints(2, 0, 1), BasisIndex::ints(0, 1, 0)).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert!(!c.steps[0].det.is_zero());
        assert!(c.verify());

        let c = reach(BasisIndex::ints(1, 1, 0), BasisIndex::ints(2, 2, 0)).unwrap();
        assert_eq!(c.steps.len(), 2);
        assert!(c.verify());

        let s = bi(1, -3, 2);
        assert!(reach(s, s).unwrap().steps.is_empty());
    }

    #[test]
    fn reach_obstruction() {
        let t = BasisIndex::ints(-1, -1, 0);
        assert!(outside_bracket_image(&t));
        assert!(matches!(
            reach(BasisIndex::ints(1, 0, 0), t),
            Err(Error::NoCertificate { .. })
        ));
    }

    #[test]
    fn reduce_examples() {
        let u = Coset::new(&basis(BasisIndex::ints(1, 0, 1)) + &basis(BasisIndex::ints(0, 1, 2)));
        let r = reduce_support(&u).unwrap();
        assert_eq!(r.result.len(), 1);

        let u3 = Coset::new(Element::from_terms([
            (BasisIndex::ints(1, 0, 1), Scalar::one()),
            (BasisIndex::ints(0, 1, 2), Scalar::from_int(3)),
            (bi(1, 3, -1), Scalar::i()),
        ]));
        assert!(reduce_support(&u3).unwrap().result.len() <= 2);

        let single = Coset::of_basis(BasisIndex::ints(1, 0, 0));
        assert!(matches!(
            reduce_support(&single),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reduce_degenerate_lines() {
        // all terms on the line through nu: needs a spreading bracket first
        let u = Coset::new(&basis(BasisIndex::ints(1, 1, 0)) + &basis(BasisIndex::ints(2, 2, 0)));
        let r = reduce_support(&u).unwrap();
        assert_eq!(r.steps.len(), 2);
        assert_eq!(r.result.len(), 1);
        // pivot pair fails, a general pair works
        let u = Coset::new(&basis(BasisIndex::ints(1, 1, 1)) + &basis(BasisIndex::ints(1, 1, 2)));
        assert_eq!(reduce_support(&u).unwrap().result.len(), 1);
    }

    #[test]
    fn h_examples() {
        assert!(in_h(&basis(bi(3, 3, -4))));
        assert!(!in_h(&basis(BasisIndex::ints(1, 0, 0))));
        assert!(h_witness(&BasisIndex::ints(1, 0, 0), HalfInt::ONE).is_some());
        assert!(in_h(&algebra::unit()));
    }

    #[test]
    fn weight_examples() {
        let idx = bi(1, 5, 6);
        assert_eq!(
            weight_of(HalfInt::from_int(2), HalfInt::ONE, &idx),
            Scalar::from_int(4)
        );
        assert!(weight_matches(HalfInt::from_int(2), HalfInt::ONE, &idx));
        assert!(weight_of(HalfInt::ZERO, HalfInt::ONE, &idx).is_zero());
        assert!(weight_of(HalfInt::ONE, HalfInt::ONE, &bi(3, 3, 1)).is_zero());
    }

    #[test]
    fn decompose_examples() {
        let w = decompose(&BasisIndex::ints(1, 0, 0));
        assert_eq!(w.exponents, [0, 0, 0, 0, 2, 0]);
        let w = decompose(&bi(-3, 0, 0));
        assert_eq!(w.exponents, [0, 3, 0, 0, 3, 0]);
        assert_eq!(decompose(&BasisIndex::UNIT).exponents, [0; 6]);
        assert_eq!(decompose(&BasisIndex::UNIT).evaluate(), algebra::unit());
        let unit_word = algebra::mul(
            &basis(GENERATORS[0]),
            &algebra::power(&basis(GENERATORS[3]), 2),
        );
        assert_eq!(unit_word, algebra::unit());
    }
}
