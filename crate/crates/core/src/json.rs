//! JSON encodings. Half-integers and rationals are strings (`"3/2"`,
//! `"-7/3"`) so values stay exact; an element is
//! `{"terms":[{"l":..,"m":..,"r":..,"c":{"c1":..,"ci":..,"cs":..,"cis":..}}]}`.

use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{BasisIndex, Element};
use crate::derivations::Derivation;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::scalars::{Rational, Scalar};
use crate::structure::{ReachCertificate, Reduction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub c1: String,
    pub ci: String,
    pub cs: String,
    pub cis: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexJson {
    pub l: String,
    pub m: String,
    pub r: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub l: String,
    pub m: String,
    pub r: String,
    pub c: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationJson {
    pub img_r: ElementJson,
    pub img_l: ElementJson,
    pub img_m: ElementJson,
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Json(format!("bad rational {s:?}")))
}

fn parse_half(s: &str) -> Result<HalfInt> {
    s.parse::<HalfInt>()
        .map_err(|_| Error::Json(format!("bad half-integer {s:?}")))
}

pub fn scalar_to_json(c: &Scalar) -> ScalarJson {
    let [a, b, s, t] = c.components();
    ScalarJson {
        c1: a.to_string(),
        ci: b.to_string(),
        cs: s.to_string(),
        cis: t.to_string(),
    }
}

pub fn scalar_from_json(j: &ScalarJson) -> Result<Scalar> {
    Ok(Scalar::new(
        parse_rational(&j.c1)?,
        parse_rational(&j.ci)?,
        parse_rational(&j.cs)?,
        parse_rational(&j.cis)?,
    ))
}

pub fn index_to_json(i: &BasisIndex) -> IndexJson {
    IndexJson {
        l: i.l.to_string(),
        m: i.m.to_string(),
        r: i.r.to_string(),
    }
}

pub fn element_to_json(e: &Element) -> ElementJson {
    ElementJson {
        terms: e
            .iter()
            .map(|(i, c)| TermJson {
                l: i.l.to_string(),
                m: i.m.to_string(),
                r: i.r.to_string(),
                c: scalar_to_json(c),
            })
            .collect(),
    }
}

pub fn element_from_json(j: &ElementJson) -> Result<Element> {
    let mut out = Element::zero();
    for t in &j.terms {
        let idx = BasisIndex::new(parse_half(&t.l)?, parse_half(&t.m)?, parse_half(&t.r)?);
        out.add_term(idx, scalar_from_json(&t.c)?);
    }
    Ok(out)
}

pub fn derivation_to_json(d: &Derivation) -> DerivationJson {
    DerivationJson {
        img_r: element_to_json(&d.img_r),
        img_l: element_to_json(&d.img_l),
        img_m: element_to_json(&d.img_m),
    }
}

pub fn derivation_from_json(j: &DerivationJson) -> Result<Derivation> {
    Ok(Derivation::new(
        element_from_json(&j.img_r)?,
        element_from_json(&j.img_l)?,
        element_from_json(&j.img_m)?,
    ))
}

pub fn parse_derivation(text: &str) -> Result<Derivation> {
    let j: DerivationJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    derivation_from_json(&j)
}

pub fn parse_element(text: &str) -> Result<Element> {
    let j: ElementJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    element_from_json(&j)
}

#[derive(Clone, Debug, Serialize)]
pub struct StepJson {
    pub x: ElementJson,
    pub y: ElementJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det: Option<ScalarJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateJson {
    pub source: IndexJson,
    pub target: IndexJson,
    pub steps: Vec<StepJson>,
    pub replay: ElementJson,
    pub verified: bool,
}

pub fn certificate_to_json(c: &ReachCertificate) -> CertificateJson {
    CertificateJson {
        source: index_to_json(&c.source),
        target: index_to_json(&c.target),
        steps: c
            .steps
            .iter()
            .map(|s| StepJson {
                x: element_to_json(&s.x),
                y: element_to_json(&s.y),
                det: Some(scalar_to_json(&s.det)),
            })
            .collect(),
        replay: element_to_json(c.replay().representative()),
        verified: c.verify(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionJson {
    pub result: ElementJson,
    pub steps: Vec<StepJson>,
}

pub fn reduction_to_json(r: &Reduction) -> ReductionJson {
    ReductionJson {
        result: element_to_json(r.result.representative()),
        steps: r
            .steps
            .iter()
            .map(|(x, y)| StepJson {
                x: element_to_json(x),
                y: element_to_json(y),
                det: None,
            })
            .collect(),
    }
}

pub fn ser_index<S: Serializer>(i: &BasisIndex, s: S) -> std::result::Result<S::Ok, S::Error> {
    index_to_json(i).serialize(s)
}

pub fn ser_scalar<S: Serializer>(c: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    c.to_string().serialize(s)
}

pub fn ser_element<S: Serializer>(e: &Element, s: S) -> std::result::Result<S::Ok, S::Error> {
    element_to_json(e).serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn element_roundtrip() {
        let e = Element::from_terms([
            (
                BasisIndex::from_doubled(1, 0, -3),
                Scalar::new(rat(1, 2), int(0), int(-3), int(1)),
            ),
            (BasisIndex::ints(0, 0, 0), Scalar::i()),
        ]);
        let text = serde_json::to_string(&element_to_json(&e)).unwrap();
        assert!(text.contains("\"l\":\"1/2\""));
        assert!(text.contains("\"r\":\"-3/2\""));
        assert_eq!(parse_element(&text).unwrap(), e);
        assert_eq!(parse_element("{\"terms\":[]}").unwrap(), Element::zero());
    }

    #[test]
    fn derivation_roundtrip() {
        let d = Derivation::new(
            crate::algebra::unit(),
            Element::zero(),
            crate::algebra::basis(BasisIndex::ints(1, 2, 3)),
        );
        let text = serde_json::to_string(&derivation_to_json(&d)).unwrap();
        assert_eq!(parse_derivation(&text).unwrap(), d);
        assert!(matches!(
            parse_derivation("{\"img_r\":1}"),
            Err(Error::Json(_))
        ));
        let bad = text.replace("\"3\"", "\"1/3\"");
        assert!(parse_derivation(&bad).is_err());
    }
}
