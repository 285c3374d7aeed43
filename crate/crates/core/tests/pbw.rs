use std::sync::Arc;

use cherednik_core::groups::{parse_group_spec, Parameter, ReflectionGroup};
use cherednik_core::pbw::{skew_group_product, PbwElement, PbwEngine};
use cherednik_core::poly::monomial_degree;
use cherednik_core::{Cyclotomic, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(spec: &str, c: &str) -> PbwEngine {
    let g = Arc::new(ReflectionGroup::build(&parse_group_spec(spec).unwrap()).unwrap());
    let p = Parameter::parse(&g, c, 11).unwrap();
    PbwEngine::new(g, &p)
}

fn el(e: &PbwEngine, s: &str) -> PbwElement {
    e.parse(s).unwrap()
}

#[test]
fn rank_one_relations() {
    let e = setup("Zm:2", "1");
    let s = e.group().element_by_label("g1").unwrap();
    let n = 1;
    let one = vec![Cyclotomic::from_int(1)];
    assert_eq!(e.commutator_yx(&one, &one), PbwElement::group(n, s));
    let yx = e.multiply(&el(&e, "y1"), &el(&e, "x1")).unwrap();
    assert_eq!(yx, el(&e, "x1*y1 + g1"));
    let yxx = e.multiply(&el(&e, "y1"), &el(&e, "x1^2")).unwrap();
    assert_eq!(yxx, el(&e, "x1^2*y1"));
    // check the last one term by term, without going through the parser
    assert_eq!(yxx, PbwElement::monomial(vec![2], 0, vec![1], Cyclotomic::from_int(1)));
}

#[test]
fn zero_parameter_commutes() {
    for spec in ["Zm:3", "Sn:3", "I2:4"] {
        let e = setup(spec, "zero");
        let n = e.nvars();
        for i in 0..n {
            for j in 0..n {
                let c = e.commutator(&PbwElement::y(n, j), &PbwElement::x(n, i)).unwrap();
                assert!(c.is_zero());
            }
        }
    }
}

#[test]
fn symmetric_group_commutator() {
    let e = setup("Sn:3", "1");
    let g = e.group().clone();
    let unit = |k: usize| (0..3).map(|i| Cyclotomic::from_int((i == k) as i64)).collect::<Vec<_>>();
    let got = e.commutator_yx(&unit(0), &unit(0));
    // oracle: for the transposition (ab), root e_a - e_b and coroot e_a^* - e_b^*
    let mut expected = PbwElement::zero(3);
    for (label, a, b) in [("s12", 0, 1), ("s13", 0, 2), ("s23", 1, 2)] {
        let root: Vec<i64> = (0..3).map(|i| (i == a) as i64 - (i == b) as i64).collect();
        let v = Cyclotomic::from_frac(root[0] * root[0], 2);
        let w = g.element_by_label(label).unwrap();
        expected.add_term((vec![0; 3], w, vec![0; 3]), v);
    }
    assert_eq!(got, expected);
    assert_eq!(got, el(&e, "1/2*s12 + 1/2*s13"));
}

#[test]
fn grading_degrees() {
    let e = setup("Zm:2", "1");
    assert_eq!(el(&e, "x1^2*g1").grading_degree(), Some(2));
    assert_eq!(el(&e, "y1*g1").grading_degree(), Some(-1));
    assert_eq!(el(&e, "x1 + y1").grading_degree(), None);
}

#[test]
fn unit_law_and_format_round_trip() {
    let e = setup("Sn:3", "generic");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let u = e.random_element(&mut rng, 3, 4);
        let one = PbwElement::one(3);
        assert_eq!(e.multiply(&one, &u).unwrap(), u);
        assert_eq!(e.multiply(&u, &one).unwrap(), u);
        let text = u.format(e.group());
        assert_eq!(e.parse(&text).unwrap(), u, "{text}");
    }
}

#[test]
fn degree_cap_is_enforced() {
    let e = setup("Zm:2", "1").with_degree_cap(4);
    let big = PbwElement::monomial(vec![5], 0, vec![0], Cyclotomic::from_int(1));
    assert!(matches!(
        e.multiply(&big, &PbwElement::y(1, 0)),
        Err(Error::DegreeCapExceeded { degree: 5, cap: 4 })
    ));
}

#[test]
fn coroot_scaling_does_not_change_products() {
    let base = setup("I2:3", "generic:3");
    let mut scaled = setup("I2:3", "generic:3");
    for k in 0..scaled.group().reflections().len() {
        scaled.rescale_reflection(k, &Cyclotomic::from_int(3 + k as i64), &Cyclotomic::from_frac(-5, 7));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let u = base.random_element(&mut rng, 3, 3);
        let v = base.random_element(&mut rng, 3, 3);
        assert_eq!(base.multiply(&u, &v).unwrap(), scaled.multiply(&u, &v).unwrap());
    }
}

fn soundness(spec: &str, c: &str, seed: u64) {
    let e = setup(spec, c);
    let g = e.group().clone();
    let n = e.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let u = e.random_element(&mut rng, 2, 2);
        let v = e.random_element(&mut rng, 2, 2);
        let w = e.random_element(&mut rng, 2, 2);
        let left = e.multiply(&e.multiply(&u, &v).unwrap(), &w).unwrap();
        let right = e.multiply(&u, &e.multiply(&v, &w).unwrap()).unwrap();
        assert_eq!(left, right, "{spec} c={c}");
        if c == "zero" {
            assert_eq!(e.multiply(&u, &v).unwrap(), skew_group_product(&g, &u, &v));
        }
        // PBW filtration: top y-degree part of uv is the product of symbols
        let (su, sv) = (u.y_symbol(), v.y_symbol());
        let top = |x: &PbwElement| x.terms().keys().map(|k| monomial_degree(&k.2)).max().unwrap_or(0);
        let d = top(&su) + top(&sv);
        let uv = e.multiply(&u, &v).unwrap();
        let mut head = PbwElement::zero(n);
        for (k, val) in uv.terms() {
            if monomial_degree(&k.2) == d {
                head.add_term(k.clone(), val.clone());
            }
        }
        assert_eq!(head, skew_group_product(&g, &su, &sv));
        assert!(uv.terms().keys().all(|k| monomial_degree(&k.2) <= d));
    }
    for i in 0..n {
        for j in 0..n {
            assert!(e.commutator(&PbwElement::x(n, i), &PbwElement::x(n, j)).unwrap().is_zero());
            assert!(e.commutator(&PbwElement::y(n, i), &PbwElement::y(n, j)).unwrap().is_zero());
        }
    }
}

#[test]
fn pbw_soundness_grid() {
    for spec in ["Zm:2", "Zm:3", "Sn:2", "Sn:3", "I2:3"] {
        for c in ["zero", "generic"] {
            soundness(spec, c, 2024);
        }
    }
}

#[test]
fn degree_is_additive() {
    let e = setup("Sn:3", "1");
    for (a, b) in [("x1*y2", "x3^2"), ("s12*y1", "y2*x1"), ("x2*p231", "y3^2*x1")] {
        let (u, v) = (el(&e, a), el(&e, b));
        let d = e.multiply(&u, &v).unwrap().grading_degree().unwrap();
        assert_eq!(d, u.grading_degree().unwrap() + v.grading_degree().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn products_are_homogeneous_and_distributive(seed in any::<u64>()) {
        let e = setup("Zm:3", "generic:1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = e.random_element(&mut rng, 3, 1);
        let v = e.random_element(&mut rng, 3, 1);
        let w = e.random_element(&mut rng, 3, 2);
        let uv = e.multiply(&u, &v).unwrap();
        if !uv.is_zero() {
            prop_assert_eq!(uv.grading_degree().unwrap(), u.grading_degree().unwrap() + v.grading_degree().unwrap());
        }
        let lhs = e.multiply(&u.add(&v), &w).unwrap();
        let rhs = e.multiply(&u, &w).unwrap().add(&e.multiply(&v, &w).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
