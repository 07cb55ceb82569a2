//! Embeddings of the classical 3-Lie algebras into `L`, a homomorphism
//! validator, and an exhaustive search over the sign and offset conventions.
//!
//! Basis templates (`A_n = L_{0,1}^n`, `B_n = L_{1,0}^n`):
//!
//! ```text
//! W3:   Q_n -> eps_q * (-A_n) + eps_i * i * n * B_n,   R_n -> eps_r * B_n
//! AWD:  S_r -> L_{0,1}^r,  T_r -> L_{1,0}^{-r}
//! AW:   U_n -> c * L_{1/2,n}^{(-1)^n}
//! WINF: W_m^r -> c * L_{1/2,m+a}^r
//! ```

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{self, BasisIndex, Element, ThreeBracket};
use crate::combination::Combination;
use crate::halfint::HalfInt;
use crate::models::{parity_sign, Aw, AwBasis, Awd, AwdBasis, W3Basis, Winf, WinfBasis, W3};
use crate::scalars::{int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ModelKind {
    W3,
    Awd,
    Aw,
    Winf,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::W3 => "w3",
            ModelKind::Awd => "awd",
            ModelKind::Aw => "aw",
            ModelKind::Winf => "winf",
        })
    }
}

impl std::str::FromStr for ModelKind {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "w3" => Ok(ModelKind::W3),
            "awd" => Ok(ModelKind::Awd),
            "aw" => Ok(ModelKind::Aw),
            "winf" => Ok(ModelKind::Winf),
            _ => Err(crate::error::Error::InvalidLiteral(s.to_string())),
        }
    }
}

/// One point of the convention space of an embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingSpec {
    pub kind: ModelKind,
    pub eps_q: i64,
    pub eps_r: i64,
    pub eps_i: i64,
    /// Structure parameter of the W3 model.
    pub z: Scalar,
    /// Lower-index offset `a` of the WINF template.
    pub offset: HalfInt,
    /// Overall constant of the AW / WINF templates.
    pub scale: Scalar,
}

impl EmbeddingSpec {
    fn base(kind: ModelKind) -> Self {
        EmbeddingSpec {
            kind,
            eps_q: 1,
            eps_r: 1,
            eps_i: 1,
            z: Scalar::zero(),
            offset: HalfInt::ZERO,
            scale: Scalar::one(),
        }
    }

    /// W3 with explicit signs and parameter.
    pub fn w3(eps_q: i64, eps_r: i64, eps_i: i64, z: Scalar) -> Self {
        EmbeddingSpec {
            eps_q,
            eps_r,
            eps_i,
            z,
            ..Self::base(ModelKind::W3)
        }
    }

    /// The literal pairing `Q_r <- -L_{0,1}^r + i r L_{1,0}^r`,
    /// `R_r <- -L_{1,0}^r` with `z = 2i`.
    pub fn w3_literal_plus() -> Self {
        Self::w3(1, -1, 1, two_i())
    }

    /// `Q_r <- -L_{0,1}^r - i r L_{1,0}^r`, `R_r <- L_{1,0}^r` with `z = -2i`.
    pub fn w3_literal_minus() -> Self {
        Self::w3(1, 1, -1, -two_i())
    }

    pub fn awd() -> Self {
        Self::base(ModelKind::Awd)
    }

    pub fn aw() -> Self {
        EmbeddingSpec {
            scale: Scalar::sqrt2(),
            ..Self::base(ModelKind::Aw)
        }
    }

    pub fn winf(offset: HalfInt) -> Self {
        EmbeddingSpec {
            offset,
            scale: Scalar::sqrt2(),
            ..Self::base(ModelKind::Winf)
        }
    }

    /// The default for each kind: certified conventions where a search is
    /// needed (W3 with `z = 2i`, WINF with offset 1).
    pub fn certified_default(kind: ModelKind) -> Self {
        match kind {
            ModelKind::W3 => Self::w3(1, 1, -1, two_i()),
            ModelKind::Awd => Self::awd(),
            ModelKind::Aw => Self::aw(),
            ModelKind::Winf => Self::winf(HalfInt::ONE),
        }
    }

    pub fn parameters(&self) -> CertifiedParameters {
        CertifiedParameters {
            eps_q: (self.kind == ModelKind::W3).then_some(self.eps_q),
            eps_r: (self.kind == ModelKind::W3).then_some(self.eps_r),
            eps_i: (self.kind == ModelKind::W3).then_some(self.eps_i),
            z: (self.kind == ModelKind::W3).then(|| self.z.to_string()),
            offset: (self.kind == ModelKind::Winf).then(|| self.offset.to_string()),
            scale: self.scale.to_string(),
        }
    }
}

pub fn two_i() -> Scalar {
    Scalar::i().scale(&int(2))
}

/// A model basis vector of any kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelBasis {
    W3(W3Basis),
    Awd(AwdBasis),
    Aw(AwBasis),
    Winf(WinfBasis),
}

impl fmt::Display for ModelBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelBasis::W3(b) => b.fmt(f),
            ModelBasis::Awd(b) => b.fmt(f),
            ModelBasis::Aw(b) => b.fmt(f),
            ModelBasis::Winf(b) => b.fmt(f),
        }
    }
}

pub type ModelElement = Combination<ModelBasis>;

/// The model algebra of a spec, on the unified basis.
#[derive(Clone, Debug)]
pub struct Model {
    kind: ModelKind,
    w3: W3,
}

impl Model {
    pub fn of(spec: &EmbeddingSpec) -> Self {
        Model {
            kind: spec.kind,
            w3: W3::new(spec.z.clone()),
        }
    }

    pub fn basis_window(&self, window: i64) -> Vec<ModelBasis> {
        match self.kind {
            ModelKind::W3 => W3::basis_window(window)
                .into_iter()
                .map(ModelBasis::W3)
                .collect(),
            ModelKind::Awd => Awd::basis_window(window)
                .into_iter()
                .map(ModelBasis::Awd)
                .collect(),
            ModelKind::Aw => Aw::basis_window(window)
                .into_iter()
                .map(ModelBasis::Aw)
                .collect(),
            ModelKind::Winf => Winf::basis_window(window)
                .into_iter()
                .map(ModelBasis::Winf)
                .collect(),
        }
    }
}

fn lift<B: Ord + Clone>(c: Combination<B>, f: impl Fn(B) -> ModelBasis) -> ModelElement {
    c.iter().map(|(b, x)| (f(b.clone()), x.clone())).collect()
}

impl ThreeBracket for Model {
    type Basis = ModelBasis;

    fn basis_bracket(&self, a: &ModelBasis, b: &ModelBasis, c: &ModelBasis) -> ModelElement {
        use ModelBasis as M;
        match (a, b, c) {
            (M::W3(x), M::W3(y), M::W3(z)) => lift(self.w3.basis_bracket(x, y, z), M::W3),
            (M::Awd(x), M::Awd(y), M::Awd(z)) => lift(Awd.basis_bracket(x, y, z), M::Awd),
            (M::Aw(x), M::Aw(y), M::Aw(z)) => lift(Aw.basis_bracket(x, y, z), M::Aw),
            (M::Winf(x), M::Winf(y), M::Winf(z)) => lift(Winf.basis_bracket(x, y, z), M::Winf),
            _ => panic!("basis vectors from different model algebras"),
        }
    }
}

/// Image of one model basis vector.
pub fn image_of_basis(spec: &EmbeddingSpec, b: &ModelBasis) -> Element {
    let s = |x: Scalar, idx: BasisIndex| Element::term(idx, x);
    match *b {
        ModelBasis::W3(W3Basis::Q(n)) => {
            let mut e = s(Scalar::from_int(-spec.eps_q), BasisIndex::ints(0, 1, n));
            e.add_term(
                BasisIndex::ints(1, 0, n),
                Scalar::i().scale(&int(spec.eps_i * n)),
            );
            e
        }
        ModelBasis::W3(W3Basis::R(n)) => s(Scalar::from_int(spec.eps_r), BasisIndex::ints(1, 0, n)),
        ModelBasis::Awd(AwdBasis::S(r)) => s(Scalar::one(), BasisIndex::ints(0, 1, r)),
        ModelBasis::Awd(AwdBasis::T(r)) => s(Scalar::one(), BasisIndex::ints(1, 0, -r)),
        ModelBasis::Aw(AwBasis(n)) => s(
            spec.scale.clone(),
            BasisIndex::new(
                HalfInt::HALF,
                HalfInt::from_int(n),
                HalfInt::from_int(parity_sign(n)),
            ),
        ),
        ModelBasis::Winf(WinfBasis { m, r }) => s(
            spec.scale.clone(),
            BasisIndex::new(
                HalfInt::HALF,
                HalfInt::from_int(m) + spec.offset,
                HalfInt::from_int(r),
            ),
        ),
    }
}

pub fn apply_embedding(spec: &EmbeddingSpec, v: &ModelElement) -> Element {
    v.map_linear(|b| image_of_basis(spec, b))
}

/// The index that identifies each image uniquely among the images of the
/// model basis (the `L_{0,1}` term for `Q_n`).
pub fn leading_index(spec: &EmbeddingSpec, b: &ModelBasis) -> BasisIndex {
    match *b {
        ModelBasis::W3(W3Basis::Q(n)) => BasisIndex::ints(0, 1, n),
        _ => *image_of_basis(spec, b)
            .support()
            .next()
            .expect("nonzero image"),
    }
}

/// Recovers the model element mapping to `e`, if `e` lies in the span of
/// the images of the model basis.
pub fn preimage(spec: &EmbeddingSpec, e: &Element) -> Option<ModelElement> {
    let mut rest = e.clone();
    let mut out = ModelElement::zero();
    // Q-images first: their L_{0,1} term is the only one of that shape
    let mut order: Vec<BasisIndex> = rest.support().copied().collect();
    order.sort_by_key(|i| (i.l != HalfInt::ZERO, *i));
    for idx in order {
        let c = rest.coeff(&idx);
        if c.is_zero() {
            continue;
        }
        let b = basis_with_leading(spec, &idx)?;
        let img = image_of_basis(spec, &b);
        let lead = img.coeff(&idx);
        let k = &c * &lead.inv().ok()?;
        rest.add_scaled(&img, &-k.clone());
        out.add_term(b, k);
    }
    rest.is_zero().then_some(out)
}

fn basis_with_leading(spec: &EmbeddingSpec, idx: &BasisIndex) -> Option<ModelBasis> {
    let int_of = |h: HalfInt| h.to_integer();
    let b = match spec.kind {
        ModelKind::W3 => match (int_of(idx.l)?, int_of(idx.m)?) {
            (0, 1) => ModelBasis::W3(W3Basis::Q(int_of(idx.r)?)),
            (1, 0) => ModelBasis::W3(W3Basis::R(int_of(idx.r)?)),
            _ => return None,
        },
        ModelKind::Awd => match (int_of(idx.l)?, int_of(idx.m)?) {
            (0, 1) => ModelBasis::Awd(AwdBasis::S(int_of(idx.r)?)),
            (1, 0) => ModelBasis::Awd(AwdBasis::T(-int_of(idx.r)?)),
            _ => return None,
        },
        ModelKind::Aw => {
            if idx.l != HalfInt::HALF {
                return None;
            }
            ModelBasis::Aw(AwBasis(int_of(idx.m)?))
        }
        ModelKind::Winf => {
            if idx.l != HalfInt::HALF {
                return None;
            }
            ModelBasis::Winf(WinfBasis {
                m: int_of(idx.m - spec.offset)?,
                r: int_of(idx.r)?,
            })
        }
    };
    (leading_index(spec, &b) == *idx).then_some(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub triple: [String; 3],
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedParameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_q: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<String>,
    pub scale: String,
}

/// Maximum number of violations kept verbatim in a report.
pub const MAX_REPORTED_VIOLATIONS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub spec: String,
    pub window: i64,
    pub passed: bool,
    pub triples_checked: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    pub certified_parameters: CertifiedParameters,
}

/// Compares `f([a, b, c])` with `[f(a), f(b), f(c)]` for every ordered
/// basis triple of the model over `[-window, window]`.
pub fn hom_check(spec: &EmbeddingSpec, window: i64) -> HomReport {
    let model = Model::of(spec);
    let basis = model.basis_window(window);
    let images: Vec<Element> = basis.iter().map(|b| image_of_basis(spec, b)).collect();
    let n = basis.len();
    let mut found: Vec<(usize, Violation)> = (0..n * n * n)
        .into_par_iter()
        .filter_map(|t| {
            let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
            let model_side = model.basis_bracket(&basis[i], &basis[j], &basis[k]);
            let lhs = apply_embedding(spec, &model_side);
            let rhs = algebra::bracket(&images[i], &images[j], &images[k]);
            (lhs != rhs).then(|| {
                (
                    t,
                    Violation {
                        triple: [
                            basis[i].to_string(),
                            basis[j].to_string(),
                            basis[k].to_string(),
                        ],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    },
                )
            })
        })
        .collect();
    found.sort_by_key(|(t, _)| *t);
    let violation_count = found.len();
    HomReport {
        spec: describe(spec),
        window,
        passed: violation_count == 0,
        triples_checked: n * n * n,
        violation_count,
        violations: found
            .into_iter()
            .take(MAX_REPORTED_VIOLATIONS)
            .map(|(_, v)| v)
            .collect(),
        certified_parameters: spec.parameters(),
    }
}

pub fn describe(spec: &EmbeddingSpec) -> String {
    match spec.kind {
        ModelKind::W3 => format!(
            "w3(eps_q={}, eps_r={}, eps_i={}, z={})",
            spec.eps_q, spec.eps_r, spec.eps_i, spec.z
        ),
        ModelKind::Awd => "awd".to_string(),
        ModelKind::Aw => format!("aw(scale={})", spec.scale),
        ModelKind::Winf => format!("winf(offset={}, scale={})", spec.offset, spec.scale),
    }
}

/// The W3 sign space times `z in {2i, -2i}`.
pub fn w3_candidates() -> Vec<EmbeddingSpec> {
    let signs = [1, -1];
    let mut out = Vec::new();
    for eq in signs {
        for er in signs {
            for ei in signs {
                for z in [two_i(), -two_i()] {
                    out.push(EmbeddingSpec::w3(eq, er, ei, z));
                }
            }
        }
    }
    out
}

pub fn winf_candidates() -> Vec<EmbeddingSpec> {
    [-2, -1, 0, 1, 2, 3]
        .into_iter()
        .map(|d| EmbeddingSpec::winf(HalfInt::from_doubled(d)))
        .collect()
}

/// Every candidate convention that passes [`hom_check`] on the window.
/// Only `W3` and `Winf` have a search space; the other kinds return their
/// fixed spec if it passes.
pub fn resolve_conventions(kind: ModelKind, window: i64) -> Vec<EmbeddingSpec> {
    let candidates = match kind {
        ModelKind::W3 => w3_candidates(),
        ModelKind::Winf => winf_candidates(),
        other => vec![EmbeddingSpec::certified_default(other)],
    };
    candidates
        .into_iter()
        .filter(|s| hom_check(s, window).passed)
        .collect()
}

/// Groups W3 conventions that differ by the automorphism `x -> -x` of the
/// model (all three signs flipped). Both members of a class have the same
/// image subalgebra.
pub fn negation_classes(specs: &[EmbeddingSpec]) -> Vec<Vec<EmbeddingSpec>> {
    let mut classes: Vec<Vec<EmbeddingSpec>> = Vec::new();
    for s in specs {
        let neg = EmbeddingSpec::w3(-s.eps_q, -s.eps_r, -s.eps_i, s.z.clone());
        match classes.iter_mut().find(|c| c.contains(&neg)) {
            Some(c) => c.push(s.clone()),
            None => classes.push(vec![s.clone()]),
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mb(b: ModelBasis) -> ModelElement {
        ModelElement::basis(b)
    }

    #[test]
    fn template_examples() {
        let awd = EmbeddingSpec::awd();
        assert_eq!(
            apply_embedding(&awd, &mb(ModelBasis::Awd(AwdBasis::S(3)))),
            Element::basis(BasisIndex::ints(0, 1, 3))
        );
        let aw = EmbeddingSpec::aw();
        assert_eq!(
            apply_embedding(&aw, &mb(ModelBasis::Aw(AwBasis(2)))),
            Element::term(BasisIndex::from_doubled(1, 4, 2), Scalar::sqrt2())
        );
        let w3 = EmbeddingSpec::w3(1, 1, 1, two_i());
        let mut q1 = Element::term(BasisIndex::ints(0, 1, 1), Scalar::from_int(-1));
        q1.add_term(BasisIndex::ints(1, 0, 1), Scalar::i());
        assert_eq!(apply_embedding(&w3, &mb(ModelBasis::W3(W3Basis::Q(1)))), q1);
    }

    #[test]
    fn fixed_embeddings_pass() {
        assert!(hom_check(&EmbeddingSpec::awd(), 2).passed);
        assert!(hom_check(&EmbeddingSpec::aw(), 2).passed);
    }

    #[test]
    fn winf_literal_offset_fails() {
        let report = hom_check(&EmbeddingSpec::winf(HalfInt::HALF), 1);
        assert!(!report.passed);
        assert!(report.violation_count > 0);
        assert!(hom_check(&EmbeddingSpec::winf(HalfInt::ONE), 1).passed);
    }

    #[test]
    fn w3_desk_computation() {
        // eps all +1: [Q,Q,Q] lands on +B while R = +B, and z = -2i
        assert!(hom_check(&EmbeddingSpec::w3(1, 1, 1, -two_i()), 2).passed);
        assert!(!hom_check(&EmbeddingSpec::w3(1, 1, 1, two_i()), 2).passed);
        assert!(!hom_check(&EmbeddingSpec::w3_literal_plus(), 2).passed);
    }

    #[test]
    fn preimage_roundtrip() {
        for spec in [
            EmbeddingSpec::certified_default(ModelKind::W3),
            EmbeddingSpec::awd(),
            EmbeddingSpec::aw(),
        ] {
            let model = Model::of(&spec);
            let basis = model.basis_window(2);
            let v: ModelElement = basis
                .iter()
                .enumerate()
                .map(|(k, b)| (*b, Scalar::from_int(k as i64 + 1)))
                .collect();
            assert_eq!(preimage(&spec, &apply_embedding(&spec, &v)), Some(v));
        }
        let spec = EmbeddingSpec::awd();
        assert_eq!(
            preimage(&spec, &Element::basis(BasisIndex::ints(2, 2, 0))),
            None
        );
    }
}
