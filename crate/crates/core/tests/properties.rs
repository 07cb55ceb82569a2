use proptest::prelude::*;

use trilie::algebra::{self, ad, basis, bracket, mul, BasisIndex, Element};
use trilie::derivations::{self, Derivation};
use trilie::expr::{self, Expr};
use trilie::json;
use trilie::nambu;
use trilie::scalars::{rat, Scalar};
use trilie::structure;
use trilie::HalfInt;

fn scalar() -> impl Strategy<Value = Scalar> {
    let q = (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d));
    (q.clone(), q.clone(), q.clone(), q).prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |c| !c.is_zero())
}

fn index(w: i64) -> impl Strategy<Value = BasisIndex> {
    (-w..=w, -w..=w, -w..=w).prop_map(|(l, m, r)| BasisIndex::from_doubled(l, m, r))
}

fn element(w: i64, max_terms: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec((index(w), nonzero_scalar()), 0..=max_terms).prop_map(Element::from_terms)
}

fn derivation() -> impl Strategy<Value = Derivation> {
    (element(4, 2), element(4, 2), element(4, 2)).prop_map(|(a, b, c)| Derivation::new(a, b, c))
}

fn expr_tree() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Num(rat(n, d))),
        Just(Expr::I),
        Just(Expr::S2),
        index(6).prop_map(Expr::Basis),
    ];
    leaf.prop_recursive(4, 32, 4, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |x| Expr::Neg(b(x))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone(), inner.clone()).prop_map(move |(x, y, z)| Expr::Bracket(
                b(x),
                b(y),
                b(z)
            )),
            (inner.clone(), inner.clone(), inner.clone()).prop_map(move |(x, y, z)| Expr::Ad(
                b(x),
                b(y),
                b(z)
            )),
            (inner.clone(), inner.clone(), inner.clone(), inner)
                .prop_map(move |(x, y, z, w)| Expr::Der(b(x), b(y), b(z), b(w))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-a.clone()), Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn product_is_commutative_associative_unital(x in element(6, 3), y in element(6, 3), z in element(6, 2)) {
        prop_assert_eq!(mul(&x, &y), mul(&y, &x));
        prop_assert_eq!(mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z)));
        prop_assert_eq!(mul(&algebra::unit(), &x), x);
    }

    #[test]
    fn bracket_is_alternating(x in element(6, 2), y in element(6, 2), z in element(6, 2)) {
        let b = bracket(&x, &y, &z);
        prop_assert_eq!(bracket(&y, &z, &x), b.clone());
        prop_assert_eq!(bracket(&z, &x, &y), b.clone());
        prop_assert_eq!(bracket(&y, &x, &z), -b.clone());
        prop_assert_eq!(bracket(&x, &z, &y), -b.clone());
        prop_assert_eq!(bracket(&z, &y, &x), -b);
        prop_assert!(bracket(&x, &x, &y).is_zero());
    }

    #[test]
    fn poisson_identities(xs in prop::array::uniform5(element(6, 2))) {
        prop_assert!(algebra::fi_residual(&xs[0], &xs[1], &xs[2], &xs[3], &xs[4]).is_zero());
        prop_assert!(algebra::leibniz_residual(&xs[0], &xs[1], &xs[2], &xs[3]).is_zero());
    }

    #[test]
    fn nambu_agrees(x in element(6, 2), y in element(6, 2), z in element(6, 2)) {
        let jac = nambu::jacobian_bracket_poly(&nambu::chi(&x), &nambu::chi(&y), &nambu::chi(&z));
        prop_assert_eq!(nambu::chi_inverse(&jac), bracket(&x, &y, &z));
        prop_assert_eq!(nambu::chi_inverse(&nambu::poly_mul(&nambu::chi(&x), &nambu::chi(&y))), mul(&x, &y));
    }

    #[test]
    fn derivation_is_linear_and_product_leibniz(d in derivation(), x in element(6, 2), y in element(6, 2), c in scalar()) {
        let lhs = d.apply(&(&x.scale(&c) + &y));
        prop_assert_eq!(lhs, &d.apply(&x).scale(&c) + &d.apply(&y));
        prop_assert!(derivations::product_leibniz_residual(&d, &x, &y).is_zero());
    }

    #[test]
    fn ad_is_a_derivation(u in element(4, 2), v in element(4, 2), xs in prop::array::uniform3(element(4, 2))) {
        let f = ad(&u, &v);
        prop_assert!(derivations::map_bracket_residual(&f, &xs[0], &xs[1], &xs[2]).is_zero());
        prop_assert!(derivations::map_product_residual(&f, &xs[0], &xs[1]).is_zero());
        let d = Derivation::from_map(&f);
        prop_assert!(derivations::gd_check(&d).satisfied);
    }

    #[test]
    fn gd_check_matches_bracket_residual(d in derivation(), xs in prop::array::uniform3(index(6))) {
        let report = derivations::gd_check(&d);
        let phi = derivations::obstruction(&d);
        prop_assert_eq!(report.satisfied, phi.is_zero());
        prop_assert_eq!(report.satisfied, derivations::violation_witness(&d).is_none());
        let (x, y, z) = (basis(xs[0]), basis(xs[1]), basis(xs[2]));
        let res = derivations::bracket_derivation_residual(&d, &x, &y, &z);
        prop_assert_eq!(res, mul(&phi, &bracket(&x, &y, &z)));
    }

    #[test]
    fn json_roundtrip(e in element(8, 4), d in derivation()) {
        let text = serde_json::to_string(&json::element_to_json(&e)).unwrap();
        prop_assert_eq!(json::parse_element(&text).unwrap(), e);
        let text = serde_json::to_string(&json::derivation_to_json(&d)).unwrap();
        prop_assert_eq!(json::parse_derivation(&text).unwrap(), d);
    }

    #[test]
    fn printed_values_reparse(e in element(8, 4), c in scalar(), h in -40i64..40) {
        prop_assert_eq!(expr::eval(&e.to_string()).unwrap().into_element(), e);
        prop_assert_eq!(c.to_string().parse::<Scalar>().unwrap(), c);
        let h = HalfInt::from_doubled(h);
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
    }

    #[test]
    fn expr_print_parse_roundtrip(e in expr_tree()) {
        let printed = e.to_string();
        prop_assert_eq!(expr::parse(&printed).unwrap(), e, "{}", printed);
    }

    #[test]
    fn decompose_roundtrip(idx in index(12)) {
        let w = structure::decompose(&idx);
        prop_assert_eq!(w.index(), idx);
        prop_assert_eq!(w.evaluate(), basis(idx));
    }

    #[test]
    fn weights(t in -6i64..=6, i in -6i64..=6, idx in index(8)) {
        let (t, i) = (HalfInt::from_doubled(t), HalfInt::from_doubled(i));
        prop_assert!(structure::weight_matches(t, i, &idx));
    }

    #[test]
    fn reach_certificates_replay(s in index(6), t in index(6)) {
        prop_assume!(!s.is_unit() && !t.is_unit());
        match structure::reach(s, t) {
            Ok(c) => {
                prop_assert!(c.verify());
                let independent = c.replay_with(|x, y, z| {
                    nambu::chi_inverse(&nambu::jacobian_bracket_poly(&nambu::chi(x), &nambu::chi(y), &nambu::chi(z)))
                });
                prop_assert!(structure::lands_on(&independent, &t));
            }
            Err(_) => prop_assert!(structure::outside_bracket_image(&t)),
        }
    }

    #[test]
    fn reduce_support_shrinks(terms in prop::collection::vec((index(4), nonzero_scalar()), 2..=4)) {
        let u = structure::Coset::new(Element::from_terms(terms));
        prop_assume!(u.len() >= 2);
        let r = structure::reduce_support(&u).unwrap();
        prop_assert!(!r.result.is_zero());
        prop_assert!(r.result.len() < u.len());
        let mut cur = u.clone();
        for (x, y) in &r.steps {
            cur = cur.bracket_with(x, y);
        }
        prop_assert_eq!(cur, r.result);
    }
}

/// `L_{-1,-1}^0` is never a bracket output, so it spans, together with all
/// other non-unit basis vectors except itself, a proper ideal mod the center.
#[test]
fn minus_nu_outside_every_bracket() {
    let idx: Vec<BasisIndex> = BasisIndex::window(HalfInt::from_int(2)).collect();
    let target = BasisIndex::ints(-1, -1, 0);
    assert!(structure::outside_bracket_image(&target));
    for a in &idx {
        for b in &idx {
            let c = target + BasisIndex::NU - *a - *b;
            assert_eq!(algebra::det_m_doubled(a, b, &c), 0, "{a} {b} {c}");
        }
    }
    let span_gen = basis(BasisIndex::ints(2, 0, 1));
    assert!(structure::reach(BasisIndex::ints(2, 0, 1), target).is_err());
    let hit = bracket(
        &span_gen,
        &basis(BasisIndex::ints(-3, -1, 0)),
        &basis(BasisIndex::ints(1, 1, -1)),
    );
    assert!(hit.coeff(&target).is_zero());
}
