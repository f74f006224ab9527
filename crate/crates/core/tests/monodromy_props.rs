mod common;

use num::bigint::BigInt;
use num::rational::BigRational;
use rand::Rng;

use semistab::arith::{valuation, Valuation};
use semistab::curves::{family_curve, reduction_class_at_p, WeierstrassCurve};
use semistab::monodromy::{
    lcm_of_orders, phi_family_at, phi_family_at_2, phi_family_at_3, phi_general_curve, phi_tame, semistability_degree,
    DegreeReport, MonodromyGroup, Provenance, GENUS_ONE_BOUND,
};
use semistab::Error;

const ORDERS: [u64; 7] = [1, 2, 3, 4, 6, 12, 24];

#[test]
fn degrees_divide_the_bound() {
    let mut rng = common::rng(21);
    for _ in 0..10_000 {
        let s = common::tabulated_s(&mut rng);
        let r = semistability_degree(&s).unwrap();
        assert_eq!(GENUS_ONE_BOUND % r.degree, 0, "s = {s}: degree {}", r.degree);
        assert!(r.divides_bound);
        assert_ne!(r.degree, 1, "s = {s}");
        for l in &r.locals {
            assert!(ORDERS.contains(&l.group.order()));
        }
        assert_eq!(r.degree, lcm_of_orders(&r.locals));
        assert!(r.bad_primes.starts_with(&[2, 3]));
    }
}

#[test]
fn sextic_twists_do_not_change_the_report() {
    let mut rng = common::rng(22);
    for _ in 0..1000 {
        let s = common::tabulated_s(&mut rng);
        let u = if rng.gen_bool(0.7) {
            BigRational::from_integer(common::coprime_to_6(&mut rng, 400))
        } else {
            BigRational::new(common::coprime_to_6(&mut rng, 100), common::coprime_to_6(&mut rng, 100))
        };
        let twisted = &s * u.pow(6);
        let a = semistability_degree(&s).unwrap();
        let b = semistability_degree(&twisted).unwrap();
        assert_eq!(a.local_signature(), b.local_signature(), "s = {s}, u = {u}");
    }
}

#[test]
fn tame_trivial_exactly_for_semistable_reduction() {
    let mut rng = common::rng(23);
    let primes = [5u64, 7, 11, 13];
    let mut seen_non_trivial = 0;
    for _ in 0..600 {
        let p = primes[rng.gen_range(0..primes.len())];
        let pk = |k: u32| BigInt::from(p).pow(k);
        let a4 = BigInt::from(rng.gen_range(-40i64..40)) * pk(rng.gen_range(0..5));
        let a6 = BigInt::from(rng.gen_range(-40i64..40)) * pk(rng.gen_range(0..7));
        let Ok(c) = WeierstrassCurve::short(BigRational::from_integer(a4), BigRational::from_integer(a6)) else {
            continue;
        };
        let g = phi_tame(&c, p).unwrap();
        let class = reduction_class_at_p(&c, p).unwrap();
        assert_eq!(g == MonodromyGroup::C1, class.is_semistable(), "{c} at {p}: {g} vs {class}");
        assert!(ORDERS.contains(&g.order()));
        seen_non_trivial += usize::from(g != MonodromyGroup::C1);
    }
    assert!(seen_non_trivial > 50);
}

#[test]
fn family_tame_primes_follow_the_sextic_rule() {
    let mut rng = common::rng(24);
    for _ in 0..500 {
        let p = [5u64, 7, 11, 13, 101][rng.gen_range(0..5)];
        let v = rng.gen_range(-11i64..=11);
        let s = common::with_valuation(&mut rng, p, v) * BigRational::from_integer(BigInt::from(6));
        let r = semistability_degree(&s);
        let Ok(r) = r else { continue };
        let k = v.rem_euclid(6) as u64;
        let expected = if k == 0 { None } else { MonodromyGroup::cyclic(6 / num::integer::gcd(k, 6)) };
        let local = r.locals.iter().find(|l| l.p == p);
        assert_eq!(local.map(|l| l.group), expected, "s = {s}, p = {p}");
        if let Some(l) = local {
            assert_eq!(l.provenance, Provenance::TameRule);
        }
    }
}

#[test]
fn untabulated_valuations_are_errors() {
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    for e in [-2i32, -1, 3, 4, 7] {
        let s = two.pow(e);
        assert!(phi_family_at_2(&s).unwrap_err().is_not_tabulated(), "v_2 = {e}");
        assert!(semistability_degree(&s).unwrap_err().is_not_tabulated());
    }
    for e in [-3i32, -1, 5, 6, 9] {
        let s = three.pow(e);
        assert!(phi_family_at_3(&s).unwrap_err().is_not_tabulated(), "v_3 = {e}");
    }
    assert!(matches!(phi_family_at(&two, 5), Err(Error::InvalidInput(_))));
    assert_eq!(semistability_degree(&BigRational::from_integer(0.into())), Err(Error::SingularCurve));
}

#[test]
fn general_curves_dispatch() {
    let x3_minus_x = WeierstrassCurve::from_integers([0, 0, 0, -1, 0]).unwrap();
    assert_eq!(phi_general_curve(&x3_minus_x, 5).unwrap().group, MonodromyGroup::C1);
    assert!(phi_general_curve(&x3_minus_x, 2).unwrap_err().is_not_tabulated());
    let e4 = family_curve(&BigRational::from_integer(4.into())).unwrap();
    for p in [2, 3] {
        assert_eq!(phi_general_curve(&e4, p).unwrap().group, phi_family_at(e4.a6(), p).unwrap());
    }
    // good reduction at 3 on the given model
    let c = WeierstrassCurve::from_integers([1, 0, 0, 0, 1]).unwrap();
    assert_eq!(valuation(&c.invariants().delta, 3), Valuation::Finite(0));
    assert_eq!(phi_general_curve(&c, 3).unwrap().group, MonodromyGroup::C1);
    assert!(phi_general_curve(&c, 4).is_err());
}

#[test]
fn degree_report_json_roundtrip() {
    let mut rng = common::rng(25);
    for _ in 0..200 {
        let r = semistability_degree(&common::tabulated_s(&mut rng)).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: DegreeReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
    let e4 = semistability_degree(&BigRational::from_integer(4.into())).unwrap();
    let v: serde_json::Value = serde_json::to_value(&e4).unwrap();
    assert_eq!(v["degree"], 24);
    assert_eq!(v["divides_minkowski"], true);
    assert_eq!(v["monodromy"][0]["group"], "SL2(F3)");
    assert_eq!(v["monodromy"][0]["order"], 24);
    assert_eq!(v["monodromy"][1]["group"], "Dic3");
}
