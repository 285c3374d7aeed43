//! The ten acceptance criteria, each reduced to one pass/fail outcome with a
//! short detail line. Used by the `acceptance` test target.

use std::sync::Arc;

use cherednik_core::character::GradedCharacter;
use cherednik_core::groups::{Parameter, ReflectionGroup};
use cherednik_core::restricted::{cm_partition, distinguished_rep, RestrictedAlgebra};
use cherednik_core::verma::{
    endo_character, ext_character, solve_eis, solve_eis_series, tor_character, EisFactorization, DEFAULT_TRUNCATION,
};
use cherednik_core::Result;

use crate::commands::{cmd_verify, DEFAULT_GRID};
use crate::job::{load_group, JobSpec};
use crate::report::Check;
use crate::suites::{bv_checks, hook_check, parabolic_suite, partition_suite, pbw_suite, theorem_suite};

pub const SEED: u64 = 7;
const T: i64 = DEFAULT_TRUNCATION;
const PARAMS: [&str; 2] = ["zero", "generic"];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub number: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: {}",
            self.number,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Include S_4 in the hook criterion.
    pub hook_s4: bool,
}

impl Options {
    pub fn from_env() -> Self {
        Options {
            hook_s4: std::env::var("ACCEPTANCE_HOOK_S4").is_ok_and(|v| !v.is_empty() && v != "0"),
        }
    }
}

fn group(spec: &str) -> Arc<ReflectionGroup> {
    load_group(spec).unwrap_or_else(|e| panic!("group {spec}: {e}"))
}

fn param(g: &ReflectionGroup, spec: &str) -> Parameter {
    Parameter::parse(g, spec, SEED).unwrap_or_else(|e| panic!("parameter {spec}: {e}"))
}

/// Fold checks into one outcome; the detail lists failures, or a count.
fn fold(number: usize, title: &'static str, checks: Vec<Check>) -> Outcome {
    let failing: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    let detail = if failing.is_empty() {
        format!("{} checks", checks.len())
    } else {
        failing.join("; ")
    };
    Outcome {
        number,
        title,
        pass: failing.is_empty() && !checks.is_empty(),
        detail,
    }
}

fn tag(prefix: &str, checks: Vec<Check>) -> impl Iterator<Item = Check> + '_ {
    checks
        .into_iter()
        .map(move |c| Check::new(format!("{} {}", prefix, c.name), c.pass, c.detail))
}

fn result_check(name: String, r: Result<bool>, detail: &str) -> Check {
    match r {
        Ok(ok) => Check::new(name, ok, detail),
        Err(e) => Check::error(name, e),
    }
}

pub fn pbw_soundness() -> Outcome {
    let mut checks = Vec::new();
    for spec in ["Zm:2", "Zm:3", "Sn:2", "Sn:3", "I2:3"] {
        let g = group(spec);
        for cs in PARAMS {
            let c = param(&g, cs);
            checks.extend(tag(&format!("{spec} c={cs}"), pbw_suite(&g, &c, SEED, 100)));
        }
    }
    fold(1, "pbw soundness", checks)
}

pub fn restricted_dimension() -> Outcome {
    let mut checks = Vec::new();
    for (spec, dim) in [
        ("Zm:2", 8),
        ("Zm:3", 27),
        ("Zm:4", 64),
        ("Sn:2", 8),
        ("Sn:3", 216),
        ("I2:3", 216),
        ("I2:4", 512),
    ] {
        let g = group(spec);
        for cs in PARAMS {
            let name = format!("{spec} c={cs}");
            match RestrictedAlgebra::build(g.clone(), &param(&g, cs), None) {
                Ok(alg) => checks.push(Check::new(name, alg.dim() == dim, format!("dim {} expected {}", alg.dim(), dim))),
                Err(e) => checks.push(Check::error(name, e)),
            }
        }
    }
    fold(2, "restricted dimension", checks)
}

pub fn cm_partitions() -> Outcome {
    let mut checks = Vec::new();
    let mut expect = |spec: &str, cs: &str, sizes: Vec<usize>, distinguished: Option<&str>| {
        let g = group(spec);
        let name = format!("{spec} c={cs}");
        let alg = match RestrictedAlgebra::build(g.clone(), &param(&g, cs), None) {
            Ok(a) => a,
            Err(e) => return checks.push(Check::error(name, e)),
        };
        let (cross, part) = partition_suite(&alg, SEED);
        checks.extend(tag(&name, cross));
        let Some(part) = part else { return };
        let mut got: Vec<usize> = part.blocks.iter().map(|b| b.labels.len()).collect();
        got.sort_unstable();
        checks.push(Check::new(format!("{name} block sizes"), got == sizes, format!("{:?}", got)));
        if let Some(want) = distinguished {
            let b = &part.blocks[0];
            let d = distinguished_rep(&b.labels, &b.b_invariants).ok();
            checks.push(Check::new(
                format!("{name} distinguished"),
                d.as_deref() == Some(want),
                format!("{:?}", d),
            ));
        }
    };
    for m in 2..=4 {
        expect(&format!("Zm:{m}"), "generic", vec![1; m], None);
    }
    expect("Zm:2", "zero", vec![2], Some("chi0"));
    expect("Zm:3", "zero", vec![3], Some("chi0"));
    expect("Sn:3", "generic", vec![1, 1, 1], None);
    fold(3, "cm partitions", checks)
}

pub fn block_theorem() -> Outcome {
    let mut checks = Vec::new();
    for spec in DEFAULT_GRID {
        let g = group(spec);
        for cs in PARAMS {
            let name = format!("{spec} c={cs}");
            let r = RestrictedAlgebra::build(g.clone(), &param(&g, cs), None)
                .and_then(|alg| cm_partition(&alg, SEED).map(|p| (alg, p)));
            match r {
                Ok((alg, part)) => checks.extend(tag(&name, theorem_suite(&alg, &part))),
                Err(e) => checks.push(Check::error(name, e)),
            }
        }
    }
    fold(4, "block theorem", checks)
}

pub fn hook_identity(opts: &Options) -> Outcome {
    let mut ns = vec![2, 3];
    if opts.hook_s4 {
        ns.push(4);
    }
    let mut checks: Vec<Check> = ns.iter().map(|&n| hook_check(n, T)).collect();
    // the identity is stated at generic c, where every block is a singleton
    for &n in &ns {
        if n > 3 {
            continue;
        }
        let spec = format!("Sn:{n}");
        let g = group(&spec);
        let singletons = RestrictedAlgebra::build(g.clone(), &param(&g, "generic"), None)
            .and_then(|alg| cm_partition(&alg, SEED))
            .map(|p| p.blocks.iter().all(|b| b.labels.len() == 1));
        checks.push(result_check(format!("{spec} generic blocks"), singletons, "all singleton"));
    }
    let mut o = fold(5, "hook identity", checks);
    if !opts.hook_s4 {
        o.detail.push_str(", S4 skipped (set ACCEPTANCE_HOOK_S4=1)");
    }
    o
}

pub fn eis_factorization() -> Outcome {
    let mut checks = Vec::new();
    for m in 1..=6u32 {
        let spec = format!("Zm:{m}");
        let g = group(&spec);
        for rep in g.irreps().expect("cyclic irreducibles") {
            let name = format!("{spec} {}", rep.label);
            match solve_eis(&g, &rep.label, T) {
                Ok(r) => {
                    let ok = r.factorization == EisFactorization::Solved(vec![m])
                        && GradedCharacter::inverse_product(&[m], T).agrees_to_order(&r.endo, T);
                    checks.push(Check::new(name, ok, r.factorization.to_string()));
                }
                Err(e) => checks.push(Check::error(name, e)),
            }
        }
    }
    let g = group("Sn:3");
    for rep in g.irreps().expect("S3 irreducibles") {
        let name = format!("Sn:3 {}", rep.label);
        match solve_eis(&g, &rep.label, T) {
            Ok(r) => {
                let reconstructs = match &r.factorization {
                    EisFactorization::Solved(e) => GradedCharacter::inverse_product(e, T).agrees_to_order(&r.endo, T),
                    EisFactorization::NoSolution => false,
                };
                let expected = rep.label != "(2,1)" || r.factorization == EisFactorization::Solved(vec![1, 1, 3]);
                checks.push(Check::new(name, reconstructs && expected, r.factorization.to_string()));
            }
            Err(e) => checks.push(Check::error(name, e)),
        }
    }
    let synthetic = GradedCharacter::from_coeffs(&[1, 1]);
    let none = solve_eis_series(&synthetic, 1) == EisFactorization::NoSolution
        && solve_eis_series(&synthetic.truncated(T), 2) == EisFactorization::NoSolution;
    checks.push(Check::new("synthetic 1+q", none, "no solution"));
    fold(6, "e_i factorization", checks)
}

pub fn tor_ext() -> Outcome {
    let mut checks = Vec::new();
    for spec in ["Zm:2", "Zm:3", "Zm:4", "Sn:2", "Sn:3", "I2:3", "I2:4"] {
        let g = group(spec);
        for rep in g.irreps().expect("irreducibles") {
            let name = format!("{spec} {}", rep.label);
            let r = (|| -> Result<Option<bool>> {
                let eis = solve_eis(&g, &rep.label, T)?;
                let Some(e) = eis.factorization.degrees() else { return Ok(None) };
                let n = g.rank() as i64;
                let sum: i64 = e.iter().map(|&x| x as i64).sum();
                let tor = tor_character(&g, &rep.label, &eis.factorization, T)?;
                let ext = ext_character(&g, &rep.label, &eis.factorization, T)?;
                let wide = endo_character(&g, &rep.label, T + sum)?;
                Ok(Some(
                    tor.t_slice(0).agrees_to_order(&eis.endo, T)
                        && ext.t_slice(0).agrees_to_order(&eis.endo, T)
                        && ext.t_degree() == Some(n)
                        && tor.t_degree() == Some(n)
                        && ext.t_slice(n).agrees_to_order(&eis.endo.shift(sum), T)
                        && tor.t_slice(n).agrees_to_order(&wide.shift(-sum), T),
                ))
            })();
            match r {
                Ok(Some(ok)) => checks.push(Check::new(name, ok, "slices")),
                Ok(None) => {}
                Err(e) => checks.push(Check::error(name, e)),
            }
        }
    }
    // Z_2 sign: Tor = (1 + t q^-2)/(1 - q^2), Ext = (1 + t q^2)/(1 - q^2)
    let g = group("Zm:2");
    let eis = EisFactorization::Solved(vec![2]);
    let closed = (|| -> Result<bool> {
        let tor = tor_character(&g, "chi1", &eis, T)?;
        let ext = ext_character(&g, "chi1", &eis, T)?;
        let geo = GradedCharacter::geometric(2, T);
        let wide = GradedCharacter::geometric(2, T + 2);
        Ok(tor.t_slice(0).agrees_to_order(&geo, T)
            && tor.t_slice(1).agrees_to_order(&wide.shift(-2), T)
            && ext.t_slice(0).agrees_to_order(&geo, T)
            && ext.t_slice(1).agrees_to_order(&geo.shift(2), T))
    })();
    checks.push(result_check("Zm:2 sign closed form".into(), closed, "(1+tq^-2)/(1-q^2), (1+tq^2)/(1-q^2)"));
    fold(7, "tor/ext characters", checks)
}

pub fn bv_suite() -> Outcome {
    fold(8, "bv suite", bv_checks(&[1, 2, 3], &[4, 6, 8], 50, SEED))
}

pub fn parabolic() -> Outcome {
    let mut checks = Vec::new();
    for spec in DEFAULT_GRID {
        let g = group(spec);
        for cs in PARAMS {
            let c = param(&g, cs);
            checks.extend(tag(&format!("{spec} c={cs}"), parabolic_suite(&g, &c, T, SEED)));
        }
    }
    fold(9, "parabolic reduction", checks)
}

fn verify_job() -> JobSpec {
    let mut job = JobSpec::new("verify");
    job.group = DEFAULT_GRID.iter().map(|s| s.to_string()).collect();
    job.seed = SEED;
    job.options.insert("samples".into(), "100".into());
    job.options.insert("bv-samples".into(), "50".into());
    job
}

pub fn determinism() -> Outcome {
    let run = || cmd_verify(verify_job()).map(|r| (r.render(), r.all_pass()));
    match (run(), run()) {
        (Ok((a, pass_a)), Ok((b, _))) => Outcome {
            number: 10,
            title: "determinism",
            pass: a == b,
            detail: format!(
                "{} bytes, {}, verify {}",
                a.len(),
                if a == b { "identical" } else { "DIFFERENT" },
                if pass_a { "all pass" } else { "has failures" }
            ),
        },
        (Err(e), _) | (_, Err(e)) => Outcome {
            number: 10,
            title: "determinism",
            pass: false,
            detail: e.to_string(),
        },
    }
}

pub fn run_all(opts: &Options) -> Vec<Outcome> {
    vec![
        pbw_soundness(),
        restricted_dimension(),
        cm_partitions(),
        block_theorem(),
        hook_identity(opts),
        eis_factorization(),
        tor_ext(),
        bv_suite(),
        parabolic(),
        determinism(),
    ]
}
