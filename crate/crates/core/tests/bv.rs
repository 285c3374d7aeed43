use std::collections::BTreeMap;

use cherednik_core::bv::*;
use cherednik_core::verma::dual_verma_pairing_expected;
use cherednik_core::{Error, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

fn x(side: Side, n: usize, i: usize) -> ExteriorElement {
    ExteriorElement::coordinate(side, n, i)
}

fn g(side: Side, n: usize, i: usize) -> ExteriorElement {
    ExteriorElement::generator(side, n, i)
}

fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

#[test]
fn conormal_delta_examples() {
    let m = TruncatedPolyModel::new(1, 6);
    let c = Side::Conormal;
    let xdy = x(c, 1, 0).mul(&g(c, 1, 0)).unwrap();
    assert_eq!(m.delta(&xdy), ExteriorElement::one(c, 1).scale(&rat(-1)));
    assert!(m.delta(&x(c, 1, 0)).is_zero());
    assert!(m.delta(&ExteriorElement::one(c, 1)).is_zero());

    let m2 = TruncatedPolyModel::new(2, 6);
    let dy12 = g(c, 2, 0).mul(&g(c, 2, 1)).unwrap();
    assert!(m2.delta(&dy12).is_zero());
    // x1 x2 dy1 ^ dy2  ->  -x2 dy2 + x1 dy1
    let a = x(c, 2, 0).mul(&x(c, 2, 1)).unwrap().mul(&dy12).unwrap();
    let expected = x(c, 2, 0).mul(&g(c, 2, 0)).unwrap().sub(&x(c, 2, 1).mul(&g(c, 2, 1)).unwrap());
    assert_eq!(m2.delta(&a), expected);
}

#[test]
fn normal_delta_examples() {
    let m = TruncatedPolyModel::new(1, 6);
    let s = Side::Normal;
    assert!(m.delta(&g(s, 1, 0)).is_zero());
    assert_eq!(m.delta(&x(s, 1, 0)), g(s, 1, 0));
    assert!(m.delta(&x(s, 1, 0).mul(&g(s, 1, 0)).unwrap()).is_zero());
    let m2 = TruncatedPolyModel::new(2, 6);
    // delta(x1 x2) = x2 Dy1 + x1 Dy2
    let f = x(s, 2, 0).mul(&x(s, 2, 1)).unwrap();
    let expected = x(s, 2, 1).mul(&g(s, 2, 0)).unwrap().add(&x(s, 2, 0).mul(&g(s, 2, 1)).unwrap());
    assert_eq!(m2.delta(&f), expected);
}

#[test]
fn conormal_bracket_is_derivative() {
    // [f, dy_j] = -df/dx_j (f has degree 0, so no sign from the normalization)
    let m = TruncatedPolyModel::new(2, 8);
    let c = Side::Conormal;
    let mut f = ExteriorElement::zero(c, 2);
    f.add_term(vec![3, 1], 0, rat(2));
    f.add_term(vec![0, 2], 0, rat(-1));
    let b0 = m.bracket(&f, &g(c, 2, 0)).unwrap();
    let mut d0 = ExteriorElement::zero(c, 2);
    d0.add_term(vec![2, 1], 0, rat(-6));
    assert_eq!(b0, d0);
    let b1 = m.bracket(&f, &g(c, 2, 1)).unwrap();
    let mut d1 = ExteriorElement::zero(c, 2);
    d1.add_term(vec![3, 0], 0, rat(-2));
    d1.add_term(vec![0, 1], 0, rat(2));
    assert_eq!(b1, d1);
    // two functions pair to zero
    assert!(m.bracket(&f, &x(c, 2, 1)).unwrap().is_zero());
}

#[test]
fn raw_bracket_is_graded_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let m = TruncatedPolyModel::new(3, 8);
    for _ in 0..40 {
        let a = ExteriorElement::random(&mut rng, Side::Conormal, 3, 2, 3);
        let b = ExteriorElement::random(&mut rng, Side::Conormal, 3, 2, 3);
        let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
        let s = if da * db % 2 == 0 { rat(1) } else { rat(-1) };
        assert_eq!(m.bracket_raw(&a, &b).unwrap(), m.bracket_raw(&b, &a).unwrap().scale(&s));
        // and the normal side is a derivation, so its bracket vanishes
        let a = ExteriorElement::random(&mut rng, Side::Normal, 3, 2, 3);
        let b = ExteriorElement::random(&mut rng, Side::Normal, 3, 2, 3);
        assert!(m.bracket_raw(&a, &b).unwrap().is_zero());
    }
}

#[test]
fn bracket_unit_and_sides() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for side in [Side::Conormal, Side::Normal] {
        let m = TruncatedPolyModel::new(2, 6);
        for _ in 0..20 {
            let a = ExteriorElement::random(&mut rng, side, 2, 2, 3);
            assert!(m.bracket(&ExteriorElement::one(side, 2), &a).unwrap().is_zero());
        }
    }
    let m = TruncatedPolyModel::new(1, 4);
    assert_eq!(
        m.bracket(&g(Side::Conormal, 1, 0), &g(Side::Normal, 1, 0)),
        Err(Error::SideMismatch)
    );
}

#[test]
fn seven_term_trivial_and_negative_control() {
    let m = TruncatedPolyModel::new(2, 6);
    let one = ExteriorElement::one(Side::Conormal, 2);
    assert!(m.check_bv_seven_term(&one, &one, &one).unwrap());
    // a third-order perturbation is not a BV operator
    let corrupt = |e: &ExteriorElement| {
        let mut out = m.delta(e);
        for ((mono, s), c) in e.terms() {
            if mono[0] >= 3 && s & 1 != 0 {
                let mut dm = mono.clone();
                dm[0] -= 3;
                out.add_term(dm, s & !1, c.clone());
            }
        }
        out
    };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = 0;
    for _ in 0..50 {
        let a = ExteriorElement::random(&mut rng, Side::Conormal, 2, 2, 3);
        let b = ExteriorElement::random(&mut rng, Side::Conormal, 2, 2, 3);
        let c = ExteriorElement::random(&mut rng, Side::Conormal, 2, 2, 3);
        if !m.seven_term_with(&corrupt, &a, &b, &c).unwrap() {
            failures += 1;
        }
    }
    assert!(failures > 0);
    let a = x(Side::Conormal, 2, 0);
    let c = a.mul(&g(Side::Conormal, 2, 0)).unwrap();
    assert!(!m.seven_term_with(&corrupt, &a, &a, &c).unwrap());
}

#[test]
fn suite_grid() {
    for n in 1..=3 {
        for d in [4u32, 6, 8] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let r = bv_suite(n, d, 50, &mut rng).unwrap();
            assert!(r.all_pass(), "n={n} D={d}: {:?}", r);
        }
    }
}

#[test]
fn virtual_homology_degrees() {
    for n in 1..=3 {
        for d in [4u32, 6, 8] {
            let m = TruncatedPolyModel::new(n, d);
            let co = m.virtual_homology(Side::Conormal);
            assert_eq!((co.total(), co.support()), (1, vec![n]), "n={n} D={d}");
            let no = m.virtual_homology(Side::Normal);
            assert_eq!((no.total(), no.support()), (1, vec![0]), "n={n} D={d}");
            // Euler characteristic against binomial chain counts over the kept weights
            let chi: i64 = co.dims.iter().map(|(k, h)| if k % 2 == 0 { *h as i64 } else { -(*h as i64) }).sum();
            let monos = |p: i64| if p < 0 { 0 } else { binom(p as usize + n - 1, n - 1) };
            let mut chain = 0i64;
            for w in -(n as i64)..=(d as i64 - n as i64) {
                for k in 0..=n {
                    let term = binom(n, k) * monos(w + k as i64);
                    chain += if k % 2 == 0 { term } else { -term };
                }
            }
            assert_eq!(chi, chain);
        }
    }
}

#[test]
fn koszul_examples() {
    // n = 1, variables (x, y): z = (y) on C[x,y]/(x)
    let r = koszul_homology(2, &[variable(2, 1)], &[0], 6).unwrap();
    assert_eq!(r.totals(), vec![1, 0]);
    assert!(r.is_regular() && r.euler_consistent());
    assert_eq!(r.dims[0][0], 1);

    // z = (x) on C[x,y]/(x): x acts by zero
    let r = koszul_homology(2, &[variable(2, 0)], &[0], 6).unwrap();
    assert!(!r.is_regular());
    assert_eq!(r.totals(), vec![7, 6]);
    assert!(r.euler_consistent());
    assert_eq!(r.require_regular(), Err(Error::NotRegularDetected { degree: 1, dim: 6 }));

    let inhomogeneous: SparsePoly = BTreeMap::from([(vec![1, 0], rat(1)), (vec![2, 0], rat(1))]);
    assert!(koszul_homology(2, &[inhomogeneous], &[], 4).is_err());
}

#[test]
fn koszul_dual_pairing() {
    for n in 0..=3 {
        let (report, tor, ext) = dual_verma_koszul(n, 6).unwrap();
        let expected = dual_verma_pairing_expected(n);
        assert_eq!(tor, vec![expected.tor_degree]);
        assert_eq!(ext, vec![expected.ext_degree]);
        assert_eq!(report.totals()[0], 1);
        assert!(report.euler_consistent());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_squares_to_zero(seed in any::<u64>(), n in 1usize..=3, normal in any::<bool>()) {
        let side = if normal { Side::Normal } else { Side::Conormal };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ExteriorElement::random(&mut rng, side, n, 5, 4);
        let m = TruncatedPolyModel::new(n, 8);
        prop_assert!(m.delta(&m.delta(&a)).is_zero());
    }

    #[test]
    fn product_is_associative(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ExteriorElement::random(&mut rng, Side::Conormal, n, 2, 3);
        let b = ExteriorElement::random(&mut rng, Side::Conormal, n, 2, 3);
        let c = ExteriorElement::random(&mut rng, Side::Conormal, n, 2, 3);
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}
