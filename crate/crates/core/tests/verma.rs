use std::sync::Arc;

use cherednik_core::character::GradedCharacter;
use cherednik_core::groups::symmetric::{hook_lengths, partition_label, partitions};
use cherednik_core::groups::{parse_group_spec, Parameter, ReflectionGroup};
use cherednik_core::restricted::RestrictedAlgebra;
use cherednik_core::verma::*;
use cherednik_core::{Error, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

const T: i64 = DEFAULT_TRUNCATION;

fn group(spec: &str) -> ReflectionGroup {
    ReflectionGroup::build(&parse_group_spec(spec).unwrap()).unwrap()
}

fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// Coefficients of `prod 1/(1-q^d)` by counting solutions of `sum a_i d_i = k`.
fn count_series(degrees: &[u32], len: usize) -> Vec<i64> {
    let mut ways = vec![0i64; len];
    ways[0] = 1;
    for &d in degrees {
        for k in d as usize..len {
            ways[k] += ways[k - d as usize];
        }
    }
    ways
}

#[test]
fn endo_examples() {
    let s3 = group("Sn:3");
    let e = endo_character(&s3, "(2,1)", T).unwrap();
    assert_eq!(e.integer_coeffs(24).unwrap(), count_series(&[1, 1, 3], 24));
    assert_eq!(&e.integer_coeffs(4).unwrap(), &[1, 2, 3, 5]);

    let z3 = group("Zm:3");
    let e = endo_character(&z3, "chi1", T).unwrap();
    assert_eq!(e.integer_coeffs(24).unwrap(), count_series(&[3], 24));

    for spec in ["Zm:2", "Zm:4", "Sn:3", "Sn:4:reduced", "I2:5"] {
        let g = group(spec);
        let triv = g.trivial_rep().unwrap().label.clone();
        let e = endo_character(&g, &triv, T).unwrap();
        assert_eq!(e.integer_coeffs(24).unwrap(), count_series(g.degrees(), 24), "{spec}");
    }
}

#[test]
fn endo_negative_exponent() {
    let f = GradedCharacter::from_coeffs(&[0, 1, 1]);
    assert_eq!(
        endo_character_from(2, &f, &[1], 10),
        Err(Error::NegativeExponentPresent(-1))
    );
}

#[test]
fn endo_constant_term_on_cyclic_groups() {
    for m in 1..=6 {
        let g = group(&format!("Zm:{m}"));
        for rep in g.irreps().unwrap() {
            let e = endo_character(&g, &rep.label, T).unwrap();
            assert_eq!(e.integer_coeffs(24).unwrap(), count_series(&[m], 24), "Zm:{m} {}", rep.label);
        }
    }
}

#[test]
fn hook_identity() {
    for n in 1..=4 {
        for p in partitions(n) {
            assert!(hook_identity_check(n, &p, T).unwrap(), "{:?}", p);
            // the hook series oracle is independent: count solutions directly
            let h = hook_series(&p, T);
            assert_eq!(h.integer_coeffs(24).unwrap(), count_series(&hook_lengths(&p), 24));
        }
    }
    assert!(hook_identity_check_label(3, "(2,1)", T).unwrap());
    assert!(hook_identity_check_label(2, "(1,1)", T).unwrap());
    assert!(!hook_identity_check(3, &[2], T).unwrap());
}

#[test]
fn eis_examples() {
    for m in 1..=6 {
        let g = group(&format!("Zm:{m}"));
        for rep in g.irreps().unwrap() {
            let r = solve_eis(&g, &rep.label, T).unwrap();
            assert_eq!(r.factorization, EisFactorization::Solved(vec![m]));
            assert_eq!(r.reading, EIS_READING);
        }
    }
    let r = solve_eis(&group("Sn:3"), "(2,1)", T).unwrap();
    assert_eq!(r.factorization, EisFactorization::Solved(vec![1, 1, 3]));
    assert_eq!(r.factorization.to_string(), "{1,1,3}");

    let synthetic = GradedCharacter::from_coeffs(&[1, 1]);
    assert_eq!(solve_eis_series(&synthetic, 1), EisFactorization::NoSolution);
    assert_eq!(solve_eis_series(&synthetic.truncated(T), 2), EisFactorization::NoSolution);
}

#[test]
fn eis_reproduces_endo_when_solved() {
    for spec in ["Sn:3", "Sn:4", "Sn:3:reduced", "I2:4", "Zm:5"] {
        let g = group(spec);
        for rep in g.irreps().unwrap() {
            let r = solve_eis(&g, &rep.label, T).unwrap();
            if let EisFactorization::Solved(e) = &r.factorization {
                assert_eq!(e.len(), g.rank());
                let prod = GradedCharacter::inverse_product(e, T);
                assert!(prod.agrees_to_order(&r.endo, T), "{spec} {}", rep.label);
            }
        }
    }
}

#[test]
fn hook_partitions_solve_eis_by_hooks() {
    // for S_n the generator degrees are exactly the hook lengths
    for n in 1..=4 {
        let g = group(&format!("Sn:{n}"));
        for p in partitions(n) {
            let r = solve_eis(&g, &partition_label(&p), T).unwrap();
            let mut hooks = hook_lengths(&p);
            hooks.sort_unstable();
            assert_eq!(r.factorization, EisFactorization::Solved(hooks));
        }
    }
}

#[test]
fn tor_ext_z2_sign() {
    let g = group("Zm:2");
    let eis = EisFactorization::Solved(vec![2]);
    let tor = tor_character(&g, "chi1", &eis, T).unwrap();
    let ext = ext_character(&g, "chi1", &eis, T).unwrap();
    let geo = GradedCharacter::geometric(2, T);
    assert!(tor.t_slice(0).agrees_to_order(&geo, T));
    assert!(tor.t_slice(1).agrees_to_order(&GradedCharacter::geometric(2, T + 2).shift(-2), T));
    assert!(ext.t_slice(1).agrees_to_order(&geo.shift(2), T));
    assert_eq!(tor.t_degree(), Some(1));
    assert_eq!(
        tor_character(&g, "chi1", &EisFactorization::NoSolution, T),
        Err(Error::MissingEis)
    );

    // the trivial group still acts on a line: degrees {1}, so nothing collapses to 1
    let z1 = group("Zm:1");
    assert_eq!(z1.degrees(), &[1]);
    let r = solve_eis(&z1, "chi0", T).unwrap();
    assert_eq!(r.factorization, EisFactorization::Solved(vec![1]));
    let tor = tor_character(&z1, "chi0", &r.factorization, T).unwrap();
    let geo = GradedCharacter::geometric(1, T + 1);
    assert!(tor.t_slice(0).agrees_to_order(&geo, T));
    assert!(tor.t_slice(1).agrees_to_order(&geo.shift(-1), T));
    assert_eq!(
        tor_character(&z1, "chi0", &EisFactorization::Solved(vec![]), T),
        Err(Error::MissingEis)
    );
}

#[test]
fn tor_ext_slices() {
    for spec in ["Zm:3", "Sn:3", "Sn:3:reduced", "I2:5"] {
        let g = group(spec);
        for rep in g.irreps().unwrap() {
            let r = solve_eis(&g, &rep.label, T).unwrap();
            let Some(e) = r.factorization.degrees() else { continue };
            let sum: i64 = e.iter().map(|&x| x as i64).sum();
            let n = g.rank() as i64;
            let tor = tor_character(&g, &rep.label, &r.factorization, T).unwrap();
            let ext = ext_character(&g, &rep.label, &r.factorization, T).unwrap();
            assert!(tor.t_slice(0).agrees_to_order(&r.endo, T));
            assert!(ext.t_slice(0).agrees_to_order(&r.endo, T));
            assert_eq!(ext.t_degree(), Some(n));
            assert!(ext.t_slice(n).agrees_to_order(&r.endo.shift(sum), T));
            assert!(tor.t_slice(n).agrees_to_order(&endo_character(&g, &rep.label, T + sum).unwrap().shift(-sum), T));
        }
    }
    // (1+tq)^2 (1+tq^3) / ((1-q)^2 (1-q^3)): t^1 slice is (2q + q^3) times the endo series
    let g = group("Sn:3");
    let eis = EisFactorization::Solved(vec![1, 1, 3]);
    let ext = ext_character(&g, "(2,1)", &eis, T).unwrap();
    let base = GradedCharacter::inverse_product(&[1, 1, 3], T);
    let t1 = GradedCharacter::from_coeffs(&[0, 2, 0, 1]).mul(&base);
    assert!(ext.t_slice(1).agrees_to_order(&t1, T));
}

#[test]
fn verma_characters() {
    let z2 = group("Zm:2");
    let v = verma_character(&z2, "chi0", T).unwrap();
    assert_eq!(v.integer_coeffs(24).unwrap(), vec![1; 24]);
    let s3 = group("Sn:3:reduced");
    let v = verma_character(&s3, "(2,1)", T).unwrap();
    let expected: Vec<i64> = (0..24).map(|k| 2 * (k + 1)).collect();
    assert_eq!(v.integer_coeffs(24).unwrap(), expected);
}

#[test]
fn baby_verma_character_matches_modules() {
    for (spec, c) in [("Zm:3", "1"), ("Sn:3:reduced", "1"), ("I2:4", "1")] {
        let g = Arc::new(group(spec));
        let p = Parameter::parse(&g, c, 3).unwrap();
        let alg = RestrictedAlgebra::build(g.clone(), &p, None).unwrap();
        for rep in g.irreps().unwrap() {
            let m = alg.baby_verma(&rep.label).unwrap();
            let mut observed = GradedCharacter::zero();
            for &w in m.weights.as_ref().unwrap() {
                observed.add_term(w, int(1));
            }
            let expected = baby_verma_character(&g, &rep.label).unwrap();
            assert_eq!(observed, expected, "{spec} {}", rep.label);
            // and it is the full Verma character times prod (1 - q^{d_i})
            let v = verma_character(&g, &rep.label, T).unwrap();
            let trimmed = v.mul(&GradedCharacter::one_minus_product(g.degrees()));
            assert!(trimmed.agrees_to_order(&expected.truncated(T), T));
        }
    }
}

#[test]
fn dual_pairing() {
    for n in 0..4 {
        let d = dual_verma_pairing_expected(n);
        assert_eq!((d.tor_degree, d.ext_degree), (0, n));
    }
}

#[test]
fn rank_over_endo() {
    for spec in ["Zm:2", "Zm:4", "Sn:3", "Sn:3:reduced", "I2:4", "Sn:4"] {
        let g = group(spec);
        for rep in g.irreps().unwrap() {
            let r = rank_check(&g, &rep.label, T).unwrap();
            assert!(r.ok, "{spec} {} -> {}", rep.label, r.quotient);
        }
    }
    let g = group("Sn:3");
    let r = rank_check(&g, "(2,1)", T).unwrap();
    // 2 (1 + q + q^2)
    assert_eq!(r.quotient.integer_coeffs(4).unwrap(), vec![2, 2, 2, 0]);
}

proptest! {
    #[test]
    fn peeling_recovers_products(mut e in proptest::collection::vec(1u32..6, 0..4)) {
        let s = GradedCharacter::inverse_product(&e, T);
        e.sort_unstable();
        prop_assert_eq!(solve_eis_series(&s, e.len()), EisFactorization::Solved(e));
    }

    #[test]
    fn peeling_rejects_perturbations(e in proptest::collection::vec(1u32..6, 1..4), k in 1i64..10) {
        let mut s = GradedCharacter::inverse_product(&e, T);
        let top = e.iter().map(|&d| d as i64).sum::<i64>() + k;
        s.add_term(top, int(-1));
        prop_assert_eq!(solve_eis_series(&s, e.len()), EisFactorization::NoSolution);
    }
}
