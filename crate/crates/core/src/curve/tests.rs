use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

const FP2: CoeffConfig = CoeffConfig::EquicharP { p: 2 };
const Q: CoeffConfig = CoeffConfig::Equichar0;

fn e1() -> CurveData {
    CurveData::parse(FP2, &["x1^2 + x1"]).unwrap()
}

fn e2() -> CurveData {
    CurveData::parse(Q, &["x1^2 - 1"]).unwrap()
}

fn e3() -> CurveData {
    CurveData::parse(FP2, &["x1^2 + x1", "x2^2 + x2 + x1"]).unwrap()
}

fn px(c: CoeffConfig, s: &str) -> KPoly {
    parse_poly(s, &Namespace::x(), c).unwrap()
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

#[test]
fn curve_validation() {
    assert!(matches!(CurveData::parse(Q, &["x1", "x1^2"]), Err(Error::InvalidCurve(_))));
    assert!(matches!(CurveData::parse(Q, &["x1/t"]), Err(Error::InvalidCurve(_))));
    assert!(matches!(CurveData::parse(Q, &["x2"]), Err(Error::UnknownVariable { .. })));
    assert!(matches!(CurveData::parse(Q, &["x1^2", "x1 + x2 + 1/t"]), Err(Error::InvalidCurve(_))));
    assert!(CurveData::parse(CoeffConfig::EquicharP { p: 4 }, &[]).is_err());
}

#[test]
fn alpha_examples() {
    assert_eq!(strings(&build_alphas(&CurveData::parse(Q, &[]).unwrap())), vec!["x"]);
    let a = build_alphas(&e1());
    assert_eq!(a[1], px(FP2, "(x^2 + x)/t"));
    let a = build_alphas(&e2());
    assert_eq!(a[1], px(Q, "(x^2 - 1)/t"));
    let a = build_alphas(&e3());
    let a2 = &a[1];
    let expected = (&(&(a2 * a2) + a2) + &px(FP2, "x")).scale(&DvrElement::t_pow(FP2, -1));
    assert_eq!(a[2], expected);
    assert_eq!(Curve::new(e3()).alpha_degrees(), &[1, 2, 4]);
    assert!(Curve::new(e3()).degrees_monotone());
}

#[test]
fn presentation_examples() {
    let p = presentation(&e1());
    let ns2 = Namespace::presentation(2);
    assert_eq!(p.gens, vec![parse_poly("t*T2 - T1^2 - T1", &ns2, FP2).unwrap()]);
    assert_eq!(p.gens[0].to_string(), "T1^2 + t*T2 + T1");
    assert!(p.maps_to_zero(&build_alphas(&e1())));
    let p0 = presentation(&CurveData::parse(Q, &[]).unwrap());
    assert!(p0.gens.is_empty());
    assert_eq!(p0.ns, Namespace::presentation(1));
    let p3 = presentation(&e3());
    let ns3 = Namespace::presentation(3);
    assert_eq!(p3.gens[1], parse_poly("t*T3 - T2^2 - T2 - T1", &ns3, FP2).unwrap());
    assert!(p3.maps_to_zero(&build_alphas(&e3())));
}

#[test]
fn conditions_examples() {
    let r = verify_conditions(&e1());
    assert!(r.all_hold());
    assert_eq!(r.jacobian_units[0].derivative.to_string(), "1");
    let r = verify_conditions(&CurveData::parse(Q, &["x1^2"]).unwrap());
    assert_eq!(r.radical, Some(false));
    assert!(!r.all_hold());
    let r = verify_conditions(&e2());
    assert!(r.all_hold());
    assert_eq!(r.jacobian_units[0].derivative.to_string(), "2*x1");
    assert_eq!(r.jacobian_units[0].inverse.as_ref().unwrap().to_string(), "1/2*x1");
    let r = verify_conditions(&e3());
    assert!(r.all_hold());
    assert_eq!(strings(&r.eliminants), vec!["x1^2 + x1", "x2^4 + x2"]);
    assert_eq!(r.jacobian_units[1].derivative.to_string(), "1");
    // the residue reduction can fail the conditions even when f is fine over K
    assert!(!verify_conditions(&CurveData::parse(Q, &["x1^2 - t"]).unwrap()).all_hold());
}

#[test]
fn special_fiber_examples() {
    let s = special_fiber(&verify_conditions(&e1()));
    assert_eq!((s.dimension, s.reduced), (Some(2), true));
    assert_eq!(s.standard_monomials, vec!["1", "T1"]);
    let s = special_fiber(&verify_conditions(&CurveData::parse(FP2, &[]).unwrap()));
    assert_eq!((s.dimension, s.reduced), (Some(1), true));
    let s = special_fiber(&verify_conditions(&CurveData::parse(FP2, &["x1^2"]).unwrap()));
    assert_eq!((s.dimension, s.reduced), (Some(2), false));
}

#[test]
fn tower_examples() {
    let t = tower_report(&e1());
    assert_eq!(t.len(), 2);
    assert_eq!(t[0].ring_generators, vec!["x1"]);
    assert_eq!(t[0].ideal.as_deref(), Some(&["t".to_string(), "x1^2 + x1".to_string()][..]));
    assert_eq!(t[1].ideal, None);
    let t = tower_report(&CurveData::parse(FP2, &[]).unwrap());
    assert_eq!(t.len(), 1);
    assert_eq!(t[0].ideal, None);
    let t = tower_report(&e3());
    assert_eq!(t[1].ring_generators, vec!["x1", "x2"]);
    assert_eq!(t[1].ideal.as_ref().unwrap(), &vec!["t", "x1^2 + x1", "x2^2 + x2 + x1"]);
}

#[test]
fn membership_examples() {
    let c = Curve::new(e1());
    let b = MemberBounds::default();
    let out = c.member(&c.alphas()[1].clone(), &b).unwrap();
    assert_eq!(out.certificate().unwrap().p.to_string(), "T2");
    let out = c.member(&px(FP2, "x^2"), &b).unwrap();
    assert_eq!(out.certificate().unwrap().p.to_string(), "t*T2 + T1");
    let out = c.member(&px(FP2, "x/t"), &b).unwrap();
    assert!(matches!(out, MemberOutcome::NotMember { .. }), "{out:?}");
    assert!(c.member(&px(FP2, "0"), &b).unwrap().is_member());
    let tight = MemberBounds { max_monomials: 3, ..b };
    assert!(matches!(c.member(&px(FP2, "x^4"), &tight), Err(Error::BoundExceeded(_))));
    let shallow = MemberBounds { max_certificate_valuation: 1, ..b };
    assert!(matches!(c.member(&px(FP2, "x^4"), &shallow), Err(Error::BoundExceeded(_))));
}

#[test]
fn membership_in_mixed_characteristic() {
    let c = Curve::new(CurveData::parse(CoeffConfig::MixedChar { p: 3 }, &["x1^3 - x1"]).unwrap());
    let g = px(CoeffConfig::MixedChar { p: 3 }, "(x^3 - x)/3");
    assert_eq!(c.member(&g, &MemberBounds::default()).unwrap().certificate().unwrap().p.to_string(), "T2");
    let g = px(CoeffConfig::MixedChar { p: 3 }, "x^3/3");
    assert!(!c.member(&g, &MemberBounds::default()).unwrap().is_member());
}

#[test]
fn saturation_examples() {
    let b = MemberBounds::default();
    let v = saturation_sample_check(&Curve::new(e1()), 20, 7, &b).unwrap();
    assert!(v.is_ok(), "{:?}", v.counterexample);
    assert!(v.expected_members > 0 && v.expected_members < 20);
    assert!(saturation_sample_check(&Curve::new(CurveData::parse(Q, &[]).unwrap()), 10, 1, &b).unwrap().is_ok());
    let bad = Curve::new(CurveData::parse(Q, &["x1^2"]).unwrap());
    assert!(matches!(saturation_sample_check(&bad, 5, 1, &b), Err(Error::ConditionsNotMet(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn membership_round_trip(seed in any::<u64>(), which in 0usize..3) {
        let data = [e1(), e2(), e3()][which].clone();
        let c = Curve::new(data.clone());
        let ns = Namespace::presentation(data.n() + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = crate::sample::poly(&mut rng, data.field(), &ns, 2, 3, (0, 2));
        let g = c.evaluate(&p).unwrap();
        let out = c.member(&g, &MemberBounds::default()).unwrap();
        let cert = out.certificate().expect("image of an O-polynomial must be a member");
        prop_assert!(c.check_certificate(cert).unwrap());
    }

    #[test]
    fn fiber_matches_radical_verdict(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ns = Namespace::xs(1);
        let f = FractionField::new(FP2);
        let mut f1 = crate::sample::poly(&mut rng, f, &ns, 3, 3, (0, 2));
        f1 = &f1 + &parse_poly("x1^4", &ns, FP2).unwrap();
        let data = CurveData::new(FP2, vec![f1]).unwrap();
        let r = verify_conditions(&data);
        prop_assert_eq!(special_fiber(&r).reduced, r.radical == Some(true));
        prop_assert!(presentation(&data).maps_to_zero(&build_alphas(&data)));
    }
}
