use cherednik_core::character::GradedCharacter;
use cherednik_core::groups::{b_invariant, parse_group_spec, GroupSpec, Parameter, ReflectionGroup};
use cherednik_core::poly::{CoinvariantQuotient, Poly};
use cherednik_core::{Cyclotomic, Error, ExactMatrix, Rational};
use num_traits::{One, Zero};

fn group(s: &str) -> ReflectionGroup {
    ReflectionGroup::build(&parse_group_spec(s).unwrap()).unwrap()
}

const MENU: &[&str] = &[
    "Zm:1", "Zm:2", "Zm:3", "Zm:5", "Sn:2", "Sn:3", "Sn:3:reduced", "Sn:4", "Sn:4:reduced", "I2:1",
    "I2:2", "I2:3", "I2:4", "I2:5", "I2:6",
];

#[test]
fn orders_and_degrees() {
    let cases: &[(&str, usize, &[u32])] = &[
        ("Zm:1", 1, &[1]),
        ("Zm:3", 3, &[3]),
        ("Zm:5", 5, &[5]),
        ("Sn:3", 6, &[1, 2, 3]),
        ("Sn:3:reduced", 6, &[2, 3]),
        ("Sn:4", 24, &[1, 2, 3, 4]),
        ("I2:4", 8, &[2, 4]),
        ("I2:5", 10, &[2, 5]),
        ("I2:6", 12, &[2, 6]),
    ];
    for (spec, order, degrees) in cases {
        let g = group(spec);
        assert_eq!(g.order(), *order, "{spec}");
        let mut d = g.degrees().to_vec();
        d.sort();
        assert_eq!(d, *degrees, "{spec}");
    }
    assert_eq!(group("Zm:3").reflections().len(), 2);
    assert_eq!(group("Sn:3").reflections().len(), 3);
    assert!(group("Zm:1").reflections().is_empty());
}

#[test]
fn reflection_data_is_consistent() {
    for spec in MENU {
        let g = group(spec);
        let count: u32 = g.degrees().iter().map(|d| d - 1).sum();
        assert_eq!(g.reflections().len() as u32, count, "{spec}");
        let id = ExactMatrix::identity(g.rank());
        for r in g.reflections() {
            let s = g.element(r.element);
            assert_eq!((s - &id).rank(), 1);
            let pairing: Cyclotomic = r.coroot.iter().zip(&r.root).map(|(a, b)| a * b).fold(Cyclotomic::zero(), |a, b| &a + &b);
            assert_eq!(pairing, Cyclotomic::from_int(2), "{spec}");
            // s fixes the kernel of the coroot and moves the root
            let moved = s.mul_vec(&r.root);
            assert_ne!(moved, r.root);
        }
    }
}

#[test]
fn irreducibles_square_sum_and_orthogonality() {
    for spec in MENU {
        let g = group(spec);
        let irreps = g.irreps().unwrap();
        let total: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
        assert_eq!(total, g.order(), "{spec}");
        for (i, a) in irreps.iter().enumerate() {
            for (j, b) in irreps.iter().enumerate() {
                let ip = g.character_inner_product(&a.character, &b.character);
                let expected = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                assert_eq!(ip, expected, "{spec}: {} vs {}", a.label, b.label);
            }
        }
    }
}

#[test]
fn irreducibles_are_multiplicative() {
    for spec in ["Sn:4", "I2:5", "I2:6", "Zm:4", "Sn:3:reduced"] {
        let g = group(spec);
        for rep in g.irreps().unwrap() {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    let ab = g.mul(a, b);
                    assert_eq!(rep.matrices[ab], &rep.matrices[a] * &rep.matrices[b], "{spec} {}", rep.label);
                }
            }
        }
    }
}

/// Graded multiplicities of `rep` in the coinvariants, by explicit traces on
/// the monomial basis of the quotient.
fn coinvariant_oracle(g: &ReflectionGroup, label: &str) -> GradedCharacter {
    let rep = g.irrep(label).unwrap();
    let subs: Vec<ExactMatrix> = (0..g.order()).map(|w| g.x_substitution(w)).collect();
    let q = CoinvariantQuotient::new(g.rank(), &subs, g.degrees(), None).unwrap();
    let mut out = GradedCharacter::zero();
    for k in 0..=q.top_degree() {
        let basis: Vec<usize> = (0..q.dim())
            .filter(|&i| q.standard_monomials()[i].iter().sum::<u32>() == k)
            .collect();
        let mut mult = Cyclotomic::zero();
        for w in 0..g.order() {
            let mut tr = Cyclotomic::zero();
            for &i in &basis {
                let m = Poly::term(q.standard_monomials()[i].clone(), Cyclotomic::one());
                let image = q.reduce(&m.substitute_linear(&subs[w]));
                tr += &image[i];
            }
            mult += &(&tr * &g.character_at(rep, g.inverse(w)));
        }
        let mult = &mult / &Cyclotomic::from_int(g.order() as i64);
        out.add_term(k as i64, mult.as_rational().unwrap().clone());
    }
    out
}

#[test]
fn fake_polynomials_match_examples() {
    let z3 = group("Zm:3");
    assert_eq!(z3.fake_polynomial(z3.irrep("chi1").unwrap()), GradedCharacter::from_coeffs(&[0, 1]));
    let s3 = group("Sn:3");
    assert_eq!(s3.fake_polynomial(s3.irrep("(2,1)").unwrap()), GradedCharacter::from_coeffs(&[0, 1, 1]));
    for spec in MENU {
        let g = group(spec);
        let f = g.fake_polynomial(g.trivial_rep().unwrap());
        assert_eq!(f, GradedCharacter::one(), "{spec}");
    }
}

#[test]
fn fake_polynomials_match_coinvariant_oracle() {
    for spec in ["Zm:3", "Zm:4", "Sn:3", "Sn:3:reduced", "I2:4", "I2:5", "Sn:4:reduced"] {
        let g = group(spec);
        for rep in g.irreps().unwrap() {
            let f = g.fake_polynomial(rep);
            assert_eq!(f, coinvariant_oracle(&g, &rep.label), "{spec} {}", rep.label);
            assert!(f.has_nonnegative_coefficients() && f.has_integer_coefficients());
            assert_eq!(f.evaluate_at_one().unwrap(), Rational::from_integer((rep.dim as i64).into()));
        }
    }
}

#[test]
fn regular_representation_identity() {
    for spec in MENU {
        let g = group(spec);
        let mut lhs = GradedCharacter::zero();
        for rep in g.irreps().unwrap() {
            lhs = lhs.add(&g.fake_polynomial(rep).scale(&Rational::from_integer((rep.dim as i64).into())));
        }
        // prod (1 - q^d) / (1 - q)^n = prod (1 + q + ... + q^{d-1})
        let mut rhs = GradedCharacter::one();
        for &d in g.degrees() {
            rhs = rhs.mul(&GradedCharacter::from_coeffs(&vec![1; d as usize]));
        }
        assert_eq!(lhs, rhs, "{spec}");
    }
}

#[test]
fn b_invariants() {
    assert_eq!(b_invariant(&GradedCharacter::one()).unwrap(), 0);
    assert_eq!(b_invariant(&GradedCharacter::from_coeffs(&[0, 1, 1])).unwrap(), 1);
    assert_eq!(b_invariant(&GradedCharacter::from_coeffs(&[0, 0, 0, 1])).unwrap(), 3);
    assert!(matches!(b_invariant(&GradedCharacter::zero()), Err(Error::ZeroPolynomial)));
}

#[test]
fn dual_representations() {
    let z3 = group("Zm:3");
    assert_eq!(z3.dual_rep(z3.irrep("chi1").unwrap()).unwrap().label, "chi2");
    for spec in MENU {
        let g = group(spec);
        for rep in g.irreps().unwrap() {
            let d = g.dual_rep(rep).unwrap();
            assert_eq!(g.dual_rep(d).unwrap().label, rep.label);
            if spec.starts_with("Sn") {
                assert_eq!(d.label, rep.label);
            }
        }
        let t = g.trivial_rep().unwrap();
        assert!(g.dual_rep(t).unwrap().is_trivial());
    }
}

#[test]
fn stabilizers() {
    let s3 = group("Sn:3");
    let v = |xs: &[i64]| xs.iter().map(|&x| Cyclotomic::from_int(x)).collect::<Vec<_>>();
    assert_eq!(s3.stabilizer(&v(&[1, 2, 3])).unwrap().order(), 1);
    let st = s3.stabilizer(&v(&[1, 1, 0])).unwrap();
    assert_eq!(st.order(), 2);
    assert_eq!(st.reflections().len(), 1);
    assert_eq!(st.label(st.reflections()[0].element), "s12");
    assert_eq!(st.irreps().unwrap().len(), 2);
    for spec in MENU {
        let g = group(spec);
        let zero = vec![Cyclotomic::zero(); g.rank()];
        assert_eq!(g.stabilizer(&zero).unwrap().order(), g.order());
    }
    let s4 = group("Sn:4");
    let st = s4.stabilizer(&v(&[5, 5, 5, 2])).unwrap();
    assert_eq!(st.order(), 6);
    assert_eq!(st.irreps().unwrap().iter().map(|r| r.dim * r.dim).sum::<usize>(), 6);
    let mut d = st.degrees().to_vec();
    d.sort();
    assert_eq!(d, vec![1, 1, 2, 3]);
}

#[test]
fn non_steinberg_subgroup_is_rejected() {
    // the rotation subgroup of I2(4) contains no reflections
    let g = group("I2:4");
    let members: Vec<usize> = (0..4).collect();
    assert!(matches!(
        g.subgroup(&members, "rot".into()),
        Err(Error::NotSteinberg { .. })
    ));
}

#[test]
fn custom_group_from_generators() {
    let gens = vec![ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]), ExactMatrix::from_i64(&[&[-1, 0], &[0, 1]])];
    let g = ReflectionGroup::build(&GroupSpec::Custom {
        conductor: 1,
        generators: gens,
    })
    .unwrap();
    assert_eq!(g.order(), 8);
    let mut d = g.degrees().to_vec();
    d.sort();
    assert_eq!(d, vec![2, 4]);
    assert!(matches!(g.irreps(), Err(Error::IrreduciblesUnavailable(_))));
}

#[test]
fn group_cap() {
    assert!(matches!(
        ReflectionGroup::build(&parse_group_spec("Sn:7").unwrap()),
        Err(Error::CapExceeded { .. }) | Err(Error::InvalidGroup(_))
    ));
}

#[test]
fn parameters() {
    let g = group("I2:4");
    let c = Parameter::parse(&g, "s0=1,s1=1/2", 0).unwrap();
    assert_eq!(c.values.len(), 2);
    assert!(Parameter::parse(&g, "s0=1", 0).is_err());
    assert!(Parameter::parse(&g, "r1=1,s0=1,s1=1", 0).is_err());
    let gen = Parameter::parse(&g, "generic:7", 0).unwrap();
    assert!(gen.claimed_generic);
    assert_ne!(gen.values["s0"], gen.values["s1"]);
    assert_eq!(gen, Parameter::generic(&g, 7));
    let k = Parameter::parse(&g, "3/2", 0).unwrap();
    assert!(k.values.values().all(|v| *v == Cyclotomic::from_frac(3, 2)));
    assert!(Parameter::parse(&g, "zero", 0).unwrap().is_zero());
}
