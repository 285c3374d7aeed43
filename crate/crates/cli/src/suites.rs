//! Invariant suites shared by `verify` and the acceptance runner. Each suite
//! returns named checks; nothing here panics on a mathematical failure.

use std::sync::Arc;

use cherednik_core::bv::{bv_suite, dual_verma_koszul};
use cherednik_core::character::GradedCharacter;
use cherednik_core::groups::symmetric::{partition_label, partitions};
use cherednik_core::groups::{Parameter, ReflectionGroup};
use cherednik_core::parabolic::{make_context, reduced_endo_characters, verify_reduction_invariance};
use cherednik_core::pbw::{skew_group_product, PbwElement, PbwEngine};
use cherednik_core::restricted::{
    center_surjectivity, cm_partition, dim_e_simple, distinguished_rep, linking_partition, BlockPartition,
    RestrictedAlgebra,
};
use cherednik_core::verma::{
    endo_character, ext_character, hook_identity_check, rank_check, solve_eis, tor_character, EisFactorization,
};
use cherednik_core::{Cyclotomic, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Check;

fn outcome<T>(name: &str, r: Result<T>, f: impl FnOnce(T) -> Check) -> Check {
    match r {
        Ok(v) => f(v),
        Err(e) => Check::error(name, e),
    }
}

/// Associativity on random triples, commuting `x`s and `y`s, and the
/// skew-group oracle when `c = 0`.
pub fn pbw_suite(group: &Arc<ReflectionGroup>, c: &Parameter, seed: u64, samples: usize) -> Vec<Check> {
    let engine = PbwEngine::new(group.clone(), c);
    let n = engine.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assoc = 0;
    let mut oracle = 0;
    let mut errors = Vec::new();
    for _ in 0..samples {
        let u = engine.random_element(&mut rng, 2, 2);
        let v = engine.random_element(&mut rng, 2, 2);
        let w = engine.random_element(&mut rng, 2, 2);
        let r = (|| -> Result<(bool, bool)> {
            let uv = engine.multiply(&u, &v)?;
            let left = engine.multiply(&uv, &w)?;
            let right = engine.multiply(&u, &engine.multiply(&v, &w)?)?;
            Ok((left == right, uv == skew_group_product(group, &u, &v)))
        })();
        match r {
            Ok((a, o)) => {
                assoc += a as usize;
                oracle += o as usize;
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let mut commute = (0, 0);
    for i in 0..n {
        for j in 0..n {
            let xx = engine.commutator(&PbwElement::x(n, i), &PbwElement::x(n, j));
            let yy = engine.commutator(&PbwElement::y(n, i), &PbwElement::y(n, j));
            commute.0 += xx.map(|e| e.is_zero()).unwrap_or(false) as usize;
            commute.1 += yy.map(|e| e.is_zero()).unwrap_or(false) as usize;
        }
    }
    let mut checks = vec![
        Check::new(
            "pbw/associativity",
            assoc == samples && errors.is_empty(),
            format!("{}/{} triples{}", assoc, samples, errors.first().map(|e| format!("; {}", e)).unwrap_or_default()),
        ),
        Check::new("pbw/x-commute", commute.0 == n * n, format!("{}/{} pairs", commute.0, n * n)),
        Check::new("pbw/y-commute", commute.1 == n * n, format!("{}/{} pairs", commute.1, n * n)),
    ];
    if c.is_zero() {
        checks.push(Check::new(
            "pbw/skew-oracle",
            oracle == samples,
            format!("{}/{} products match", oracle, samples),
        ));
    }
    checks
}

pub fn dimension_check(alg: &RestrictedAlgebra) -> Check {
    let w = alg.group().order();
    let expected = w * w * w;
    Check::new(
        "restricted/dimension",
        alg.dim() == expected,
        format!("dim {} vs |W|^3 = {}", alg.dim(), expected),
    )
}

/// Blocks from central idempotents, compared with the central-character linkage.
pub fn partition_suite(alg: &RestrictedAlgebra, seed: u64) -> (Vec<Check>, Option<BlockPartition>) {
    let part = match cm_partition(alg, seed) {
        Ok(p) => p,
        Err(e) => return (vec![Check::error("cm/partition", e)], None),
    };
    let mut checks = vec![outcome("cm/linking-agrees", linking_partition(alg), |link| {
        Check::new(
            "cm/linking-agrees",
            link == part.label_sets(),
            format!("{} blocks by idempotents, {} by central characters", part.blocks.len(), link.len()),
        )
    })];
    let mut tied = Vec::new();
    for b in &part.blocks {
        if let Err(e) = distinguished_rep(&b.labels, &b.b_invariants) {
            tied.push(e.to_string());
        }
    }
    checks.push(Check::new(
        "cm/distinguished",
        tied.is_empty(),
        if tied.is_empty() { "unique minimal b in every block".to_string() } else { tied.join("; ") },
    ));
    (checks, Some(part))
}

/// `dim e L(lambda)` is 1 exactly at the distinguished member, and the centre
/// surjects onto the endomorphisms of its baby Verma.
pub fn theorem_suite(alg: &RestrictedAlgebra, part: &BlockPartition) -> Vec<Check> {
    let mut e_ok = true;
    let mut e_detail = Vec::new();
    let mut surj_ok = true;
    let mut surj_detail = Vec::new();
    for b in &part.blocks {
        let Ok(d) = distinguished_rep(&b.labels, &b.b_invariants) else {
            e_ok = false;
            surj_ok = false;
            continue;
        };
        for l in &b.labels {
            let expected = usize::from(*l == d);
            match dim_e_simple(alg, l) {
                Ok(v) => {
                    e_ok &= v == expected;
                    e_detail.push(format!("{}:{}", l, v));
                }
                Err(err) => {
                    e_ok = false;
                    e_detail.push(format!("{}: {}", l, err));
                }
            }
        }
        match center_surjectivity(alg, &d) {
            Ok(r) => {
                surj_ok &= r.surjective;
                surj_detail.push(format!("{}: End {} / image {}", d, r.dim_end, r.dim_center_image));
            }
            Err(err) => {
                surj_ok = false;
                surj_detail.push(format!("{}: {}", d, err));
            }
        }
    }
    vec![
        Check::new("blocks/e-dims", e_ok, e_detail.join(" ")),
        Check::new("blocks/center-surjects", surj_ok, surj_detail.join("; ")),
    ]
}

/// Closed-form characters on every block: positivity, `e_i`, Tor/Ext slices,
/// and the rank quotient on singleton blocks.
pub fn character_suite(group: &ReflectionGroup, part: &BlockPartition, truncation: i64) -> Vec<Check> {
    let mut positive = (true, Vec::new());
    let mut eis = (true, Vec::new());
    let mut slices = (true, Vec::new());
    let mut rank = (true, Vec::new());
    for b in &part.blocks {
        let Ok(d) = distinguished_rep(&b.labels, &b.b_invariants) else { continue };
        match endo_character(group, &d, truncation) {
            Ok(e) => {
                let ok = e.lowest_exponent() == Some(0)
                    && e.coefficient(0) == GradedCharacter::one().coefficient(0)
                    && e.has_nonnegative_coefficients();
                positive.0 &= ok;
                positive.1.push(format!("{}:{}", d, if ok { "ok" } else { "bad" }));
            }
            Err(err) => {
                positive.0 = false;
                positive.1.push(format!("{}: {}", d, err));
            }
        }
        if b.labels.len() != 1 {
            continue;
        }
        let r = (|| -> Result<()> {
            let report = solve_eis(group, &d, truncation)?;
            let solved = match &report.factorization {
                EisFactorization::Solved(e) => {
                    let ok = GradedCharacter::inverse_product(e, truncation).agrees_to_order(&report.endo, truncation);
                    eis.0 &= ok;
                    eis.1.push(format!("{}:{}", d, report.factorization));
                    Some(e.clone())
                }
                EisFactorization::NoSolution => {
                    eis.1.push(format!("{}: none", d));
                    None
                }
            };
            if let Some(e) = solved {
                let n = group.rank() as i64;
                let sum: i64 = e.iter().map(|&x| x as i64).sum();
                let tor = tor_character(group, &d, &report.factorization, truncation)?;
                let ext = ext_character(group, &d, &report.factorization, truncation)?;
                let wide = endo_character(group, &d, truncation + sum)?;
                let ok = tor.t_slice(0).agrees_to_order(&report.endo, truncation)
                    && ext.t_slice(0).agrees_to_order(&report.endo, truncation)
                    && ext.t_slice(n).agrees_to_order(&report.endo.shift(sum), truncation)
                    && tor.t_slice(n).agrees_to_order(&wide.shift(-sum), truncation);
                slices.0 &= ok;
                slices.1.push(format!("{}:{}", d, if ok { "ok" } else { "bad" }));
            }
            let rc = rank_check(group, &d, truncation)?;
            rank.0 &= rc.ok;
            let note = if rc.terminates { "" } else { " [does not terminate below q^(T/2); raise --trunc]" };
            rank.1.push(format!("{}:{}{}", d, rc.quotient, note));
            Ok(())
        })();
        if let Err(err) = r {
            eis.0 = false;
            eis.1.push(format!("{}: {}", d, err));
        }
    }
    let t = format!(" (to q^{})", truncation);
    vec![
        Check::new("chars/endo-positive", positive.0, positive.1.join(" ") + &t),
        Check::new("chars/eis-reconstruct", eis.0, eis.1.join(" ") + &t),
        Check::new("chars/tor-ext-slices", slices.0, slices.1.join(" ") + &t),
        Check::new("chars/rank-quotient", rank.0, rank.1.join("; ") + &t),
    ]
}

/// Hook identity for every partition of `n`.
pub fn hook_check(n: usize, truncation: i64) -> Check {
    let mut ok = true;
    let mut detail = Vec::new();
    for p in partitions(n) {
        let r = hook_identity_check(n, &p, truncation);
        let pass = matches!(r, Ok(true));
        ok &= pass;
        detail.push(format!("{}:{}", partition_label(&p), pass));
    }
    Check::new(format!("chars/hook S{}", n), ok, format!("{} (to q^{})", detail.join(" "), truncation))
}

/// Sample points: the origin, unit vectors, a sum of two, and one seeded point.
pub fn sample_points(rank: usize, seed: u64) -> Vec<Vec<Cyclotomic>> {
    let mut pts = vec![vec![Cyclotomic::from_int(0); rank]];
    for i in 0..rank {
        let mut p = vec![Cyclotomic::from_int(0); rank];
        p[i] = Cyclotomic::from_int(1);
        pts.push(p);
    }
    if rank >= 2 {
        let mut p = vec![Cyclotomic::from_int(0); rank];
        p[0] = Cyclotomic::from_int(1);
        p[1] = Cyclotomic::from_int(1);
        pts.push(p);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pts.push((0..rank).map(|_| Cyclotomic::from_int(rng.gen_range(-2i64..=2))).collect());
    pts.dedup();
    pts
}

fn show_point(p: &[Cyclotomic]) -> String {
    format!("({})", p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

pub fn parabolic_suite(group: &Arc<ReflectionGroup>, c: &Parameter, truncation: i64, seed: u64) -> Vec<Check> {
    let mut orbit = (true, Vec::new());
    let mut origin = (true, String::new());
    let mut invariance = (true, Vec::new());
    for p in sample_points(group.rank(), seed) {
        let ctx = match make_context(group.clone(), c, &p) {
            Ok(ctx) => ctx,
            Err(e) => {
                orbit.0 = false;
                orbit.1.push(format!("{}: {}", show_point(&p), e));
                continue;
            }
        };
        let ok = ctx.orbit_size() * ctx.stabilizer.order() == group.order();
        orbit.0 &= ok;
        orbit.1.push(format!("{}:{}x{}", show_point(&p), ctx.orbit_size(), ctx.stabilizer.order()));
        if ctx.is_origin() {
            let r = (|| -> Result<bool> {
                let reduced = reduced_endo_characters(&ctx, truncation)?;
                let alg = RestrictedAlgebra::build(group.clone(), c, None)?;
                let part = cm_partition(&alg, 0)?;
                for b in &part.blocks {
                    let d = distinguished_rep(&b.labels, &b.b_invariants)?;
                    let direct = endo_character(group, &d, truncation)?;
                    if b.labels.iter().any(|l| !reduced[l].agrees_to_order(&direct, truncation)) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            match r {
                Ok(v) => {
                    origin.0 &= v;
                    origin.1 = format!("{} irreducibles", group.irreps().map(|r| r.len()).unwrap_or(0));
                }
                Err(e) => {
                    origin.0 = false;
                    origin.1 = e.to_string();
                }
            }
            continue;
        }
        let mut moved = 0;
        for w in 0..group.order() {
            match verify_reduction_invariance(group.clone(), c, &p, w, truncation) {
                Ok(true) => moved += 1,
                Ok(false) => invariance.0 = false,
                Err(e) => {
                    invariance.0 = false;
                    invariance.1.push(format!("{}: {}", show_point(&p), e));
                }
            }
        }
        invariance.1.push(format!("{}:{}/{}", show_point(&p), moved, group.order()));
    }
    vec![
        Check::new("parabolic/orbit-stabilizer", orbit.0, orbit.1.join(" ")),
        Check::new("parabolic/origin-identity", origin.0, origin.1),
        Check::new(
            "parabolic/orbit-invariance",
            invariance.0,
            format!("{} (to q^{})", invariance.1.join(" "), truncation),
        ),
    ]
}

/// The BV checks over a grid of ranks and truncations, plus stability of the
/// virtual homology in `D` and the Koszul pairing.
pub fn bv_checks(ranks: &[usize], truncations: &[u32], samples: usize, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for &n in ranks {
        let mut homology = Vec::new();
        for &d in truncations {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tag = format!("n={} D={}", n, d);
            let r = match bv_suite(n, d, samples, &mut rng) {
                Ok(r) => r,
                Err(e) => {
                    checks.push(Check::error(format!("bv/suite {}", tag), e));
                    continue;
                }
            };
            let full = 2 * samples;
            checks.push(Check::new(
                format!("bv/delta-squared {}", tag),
                r.delta_squared == full,
                format!("{}/{}", r.delta_squared, full),
            ));
            checks.push(Check::new(
                format!("bv/seven-term {}", tag),
                r.seven_term == full,
                format!("{}/{}", r.seven_term, full),
            ));
            let axioms = r.antisymmetry.min(r.leibniz).min(r.jacobi);
            checks.push(Check::new(
                format!("bv/bracket-axioms {}", tag),
                axioms == full,
                format!("antisymmetry {} leibniz {} jacobi {} of {}", r.antisymmetry, r.leibniz, r.jacobi, full),
            ));
            checks.push(Check::new(
                format!("bv/virtual-homology {}", tag),
                r.conormal.total() == 1 && r.normal.total() == 1,
                format!(
                    "conormal {:?} normal {:?}; excluded weights {:?}",
                    r.conormal.dims, r.normal.dims, r.conormal.excluded_weights
                ),
            ));
            homology.push((r.conormal.dims.clone(), r.normal.dims.clone()));
        }
        let stable = homology.windows(2).all(|w| w[0] == w[1]);
        checks.push(Check::new(
            format!("bv/homology-stable n={}", n),
            stable && !homology.is_empty(),
            format!("D in {:?}", truncations),
        ));
    }
    for &n in ranks {
        let d = truncations.iter().copied().max().unwrap_or(6);
        let expected = cherednik_core::verma::dual_verma_pairing_expected(n);
        checks.push(match dual_verma_koszul(n, d) {
            Ok((report, tor, ext)) => Check::new(
                format!("bv/koszul n={}", n),
                tor == vec![expected.tor_degree] && ext == vec![expected.ext_degree] && report.totals()[0] == 1,
                format!("Tor in {:?}, Ext in {:?}", tor, ext),
            ),
            Err(e) => Check::error(format!("bv/koszul n={}", n), e),
        });
    }
    checks
}

/// True when the group is `S_n` in its permutation representation.
pub fn symmetric_permutation_rank(group: &ReflectionGroup) -> Option<usize> {
    let name = group.name();
    let rest = name.strip_prefix("Sn:")?;
    let (n, rep) = rest.split_once(':').unwrap_or((rest, "permutation"));
    (rep == "permutation").then(|| n.parse().ok()).flatten()
}

