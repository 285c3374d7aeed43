use std::sync::Arc;

use cherednik_core::character::GradedCharacter;
use cherednik_core::groups::{parse_group_spec, Parameter, ReflectionGroup};
use cherednik_core::parabolic::*;
use cherednik_core::verma::{endo_character, DEFAULT_TRUNCATION as T};
use cherednik_core::Cyclotomic;

fn group(spec: &str) -> Arc<ReflectionGroup> {
    Arc::new(ReflectionGroup::build(&parse_group_spec(spec).unwrap()).unwrap())
}

fn point(xs: &[i64]) -> Vec<Cyclotomic> {
    xs.iter().map(|&x| Cyclotomic::from_int(x)).collect()
}

#[test]
fn contexts() {
    let g = group("Sn:3");
    let c = Parameter::parse(&g, "1", 0).unwrap();
    let ctx = make_context(g.clone(), &c, &point(&[1, 1, 0])).unwrap();
    assert_eq!((ctx.stabilizer.order(), ctx.orbit_size()), (2, 3));
    assert!(ctx.restricted_parameter.values.values().all(|v| *v == Cyclotomic::from_int(1)));
    assert_eq!(ctx.stabilizer.degrees(), &[1, 1, 2]);

    let ctx = make_context(g.clone(), &c, &point(&[1, 2, 3])).unwrap();
    assert_eq!((ctx.stabilizer.order(), ctx.orbit_size()), (1, 6));

    for spec in ["Zm:3", "Sn:3", "Sn:3:reduced", "I2:4"] {
        let g = group(spec);
        let c = Parameter::generic(&g, 5);
        let ctx = make_context(g.clone(), &c, &vec![Cyclotomic::from_int(0); g.rank()]).unwrap();
        assert!(ctx.is_origin());
        assert_eq!((ctx.stabilizer.order(), ctx.orbit_size()), (g.order(), 1));
    }
}

#[test]
fn orbit_stabilizer() {
    let cases: &[(&str, &[&[i64]])] = &[
        ("Sn:3", &[&[1, 1, 0], &[1, 2, 3], &[2, 2, 2], &[0, 0, 5]]),
        ("Sn:4", &[&[1, 1, 0, 0], &[3, 1, 1, 1], &[1, 2, 3, 4]]),
        ("Sn:3:reduced", &[&[1, 0], &[1, 1], &[2, -1]]),
        ("I2:4", &[&[1, 0], &[1, 1], &[2, 3]]),
        ("Zm:4", &[&[1], &[0]]),
    ];
    for (spec, pts) in cases {
        let g = group(spec);
        let c = Parameter::generic(&g, 1);
        for p in *pts {
            let ctx = make_context(g.clone(), &c, &point(p)).unwrap();
            assert_eq!(ctx.orbit_size() * ctx.stabilizer.order(), g.order(), "{spec} {:?}", p);
        }
    }
}

#[test]
fn reduction_at_origin_is_identity() {
    for spec in ["Zm:2", "Zm:3", "Sn:2", "Sn:3:reduced", "I2:4"] {
        let g = group(spec);
        let c = Parameter::generic(&g, 9);
        let ctx = make_context(g.clone(), &c, &vec![Cyclotomic::from_int(0); g.rank()]).unwrap();
        for rep in g.irreps().unwrap() {
            let a = reduced_endo_character(&ctx, &rep.label, T).unwrap();
            let b = endo_character(&g, &rep.label, T).unwrap();
            assert!(a.agrees_to_order(&b, T), "{spec} {}", rep.label);
        }
    }
}

#[test]
fn reduced_examples() {
    let g = group("Sn:3");
    let c = Parameter::parse(&g, "1", 0).unwrap();
    let ctx = make_context(g.clone(), &c, &point(&[1, 1, 0])).unwrap();
    let triv = ctx.stabilizer.trivial_rep().unwrap().label.clone();
    let e = reduced_endo_character(&ctx, &triv, T).unwrap();
    assert!(e.agrees_to_order(&GradedCharacter::inverse_product(&[1, 1, 2], T), T));

    let ctx = make_context(g.clone(), &c, &point(&[1, 2, 3])).unwrap();
    let e = reduced_endo_character(&ctx, "triv", T).unwrap();
    assert!(e.agrees_to_order(&GradedCharacter::inverse_product(&[1, 1, 1], T), T));
}

#[test]
fn orbit_invariance() {
    let cases: &[(&str, &[i64])] = &[
        ("Sn:3", &[1, 1, 0]),
        ("Sn:3", &[1, 2, 3]),
        ("Sn:3:reduced", &[1, 0]),
        ("I2:4", &[1, 0]),
        ("I2:4", &[1, 1]),
        ("Zm:3", &[0]),
    ];
    for (spec, p) in cases {
        let g = group(spec);
        let c = Parameter::generic(&g, 2);
        for w in 0..g.order() {
            assert!(
                verify_reduction_invariance(g.clone(), &c, &point(p), w, T).unwrap(),
                "{spec} {:?} {}",
                p,
                g.label(w)
            );
        }
    }
}
