use std::collections::BTreeMap;
use std::sync::Arc;

use cherednik_core::bv::{dual_verma_koszul, Side, TruncatedPolyModel};
use cherednik_core::character::{BigradedCharacter, GradedCharacter};
use cherednik_core::groups::{b_invariant, Parameter, ReflectionGroup};
use cherednik_core::parabolic::{make_context, reduced_endo_characters, reduced_partition};
use cherednik_core::pbw::PbwEngine;
use cherednik_core::restricted::{cm_partition, distinguished_rep, BlockPartition, RestrictedAlgebra};
use cherednik_core::verma::{
    endo_character, ext_character, hook_identity_check, solve_eis, tor_character, EisFactorization, EIS_READING,
};
use cherednik_core::{Error, Rational};
use serde_json::{json, Value};

use crate::job::{load_group, load_parameter, parse_point, JobSpec};
use crate::report::{Check, Report, Table};
use crate::suites::{
    bv_checks, character_suite, dimension_check, hook_check, parabolic_suite, partition_suite, pbw_suite,
    symmetric_permutation_rank, theorem_suite,
};
use crate::CliError;

fn rational_pair(c: &Rational) -> (String, String) {
    (c.numer().to_string(), c.denom().to_string())
}

/// `{truncation, terms: [[q_exp, t_exp, num, den]]}`; a null truncation means exact.
pub fn character_json(g: &GradedCharacter) -> Value {
    let terms: Vec<Value> = g
        .terms()
        .iter()
        .map(|(e, c)| {
            let (n, d) = rational_pair(c);
            json!([e, 0, n, d])
        })
        .collect();
    json!({ "truncation": g.truncation(), "terms": terms, "text": g.to_string() })
}

pub fn bigraded_json(g: &BigradedCharacter) -> Value {
    let terms: Vec<Value> = g
        .terms()
        .iter()
        .map(|((e, t), c)| {
            let (n, d) = rational_pair(c);
            json!([e, t, n, d])
        })
        .collect();
    json!({ "truncation": g.truncation(), "terms": terms })
}

fn one_group(job: &JobSpec) -> Result<Arc<ReflectionGroup>, CliError> {
    match job.group.as_slice() {
        [g] => load_group(g),
        [] => Err(CliError::Usage("--group is required".into())),
        _ => Err(CliError::Usage("this command takes a single --group".into())),
    }
}

fn one_parameter(job: &JobSpec, group: &ReflectionGroup) -> Result<Parameter, CliError> {
    let spec = job.c.first().map(|s| s.as_str()).unwrap_or("generic");
    load_parameter(group, spec, job.seed)
}

pub fn cmd_group(job: JobSpec) -> Result<Report, CliError> {
    let g = one_group(&job)?;
    let mut report = Report::new(job);
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .map(|c| json!({ "label": c.label, "size": c.elements.len() }))
        .collect();
    let degree_product: u64 = g.degrees().iter().map(|&d| d as u64).product();
    report.checks.push(Check::new(
        "group/degree-product",
        degree_product == g.order() as u64,
        format!("prod d_i = {}, |W| = {}", degree_product, g.order()),
    ));
    let mut irreps = Vec::new();
    let mut table = Table::new(&["irrep", "dim", "b", "fake degree", "dual"]);
    match g.irreps() {
        Ok(reps) => {
            let mut sum_sq = 0;
            let mut fake_ok = true;
            for r in reps {
                let f = g.fake_polynomial(r);
                let b = b_invariant(&f)?;
                let dual = g.dual_rep(r)?.label.clone();
                sum_sq += r.dim * r.dim;
                fake_ok &= f.evaluate_at_one() == Some(Rational::from_integer(r.dim.into()));
                table.push(vec![r.label.clone(), r.dim.to_string(), b.to_string(), f.to_string(), dual.clone()]);
                irreps.push(json!({
                    "label": r.label,
                    "dim": r.dim,
                    "b_invariant": b,
                    "fake_polynomial": character_json(&f),
                    "dual": dual,
                }));
            }
            report.checks.push(Check::new(
                "group/sum-of-squares",
                sum_sq == g.order(),
                format!("sum dim^2 = {}", sum_sq),
            ));
            report
                .checks
                .push(Check::new("group/fake-degree-at-1", fake_ok, "f_lambda(1) = dim lambda"));
        }
        Err(e) => irreps.push(json!({ "unavailable": e.to_string() })),
    }
    report.data = json!({
        "name": g.name(),
        "order": g.order(),
        "rank": g.rank(),
        "conductor": g.conductor(),
        "degrees": g.degrees(),
        "reflections": g.reflections().len(),
        "reflection_classes": g.reflection_classes(),
        "classes": classes,
        "irreducibles": irreps,
        "precision": "exact",
    });
    report.table = table;
    Ok(report)
}

fn blocks_json(part: &BlockPartition) -> Vec<Value> {
    part.blocks
        .iter()
        .map(|b| {
            let d = distinguished_rep(&b.labels, &b.b_invariants);
            json!({
                "labels": b.labels,
                "b_invariants": b.b_invariants,
                "distinguished": d.as_ref().ok(),
                "tie": d.err().map(|e| e.to_string()),
            })
        })
        .collect()
}

pub fn cmd_cm_partition(job: JobSpec) -> Result<Report, CliError> {
    let g = one_group(&job)?;
    let c = one_parameter(&job, &g)?;
    let alg = RestrictedAlgebra::build(g.clone(), &c, None)?;
    let mut report = Report::new(job.clone());
    report.checks.push(dimension_check(&alg));
    let (checks, part) = partition_suite(&alg, job.seed);
    report.checks.extend(checks);
    let Some(part) = part else {
        return Ok(report);
    };
    let verified = theorem_suite(&alg, &part);
    let mut table = Table::new(&["block", "labels", "b-invariants", "distinguished"]);
    for (i, b) in part.blocks.iter().enumerate() {
        let d = distinguished_rep(&b.labels, &b.b_invariants).unwrap_or_else(|_| "tie".into());
        table.push(vec![
            (i + 1).to_string(),
            b.labels.join(" "),
            b.b_invariants.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
            d,
        ]);
    }
    report.data = json!({
        "group": g.name(),
        "parameter": c.to_string(),
        "dimension": alg.dim(),
        "blocks": blocks_json(&part),
        "verified": {
            "e_dims": verified[0].pass,
            "center_surjectivity": verified[1].pass,
        },
        "precision": "exact",
    });
    report.checks.extend(verified);
    report.table = table;
    Ok(report)
}

/// Blocks at `c`, or all singletons when the algebra is out of reach and `c`
/// is generic (reported as an assumption).
fn blocks_or_assumed(g: &Arc<ReflectionGroup>, c: &Parameter, seed: u64) -> Result<(BlockPartition, bool), CliError> {
    match RestrictedAlgebra::build(g.clone(), c, None) {
        Ok(alg) => Ok((cm_partition(&alg, seed)?, false)),
        Err(Error::CapExceeded { .. }) if c.claimed_generic => {
            let blocks = g
                .irreps()?
                .iter()
                .map(|r| {
                    Ok(cherednik_core::restricted::Block {
                        labels: vec![r.label.clone()],
                        b_invariants: vec![b_invariant(&g.fake_polynomial(r))?],
                        idempotent: Vec::new(),
                    })
                })
                .collect::<cherednik_core::Result<Vec<_>>>()?;
            Ok((BlockPartition { blocks }, true))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_characters(job: JobSpec) -> Result<Report, CliError> {
    let g = one_group(&job)?;
    let c = one_parameter(&job, &g)?;
    let t = job.truncation;
    let (part, assumed) = blocks_or_assumed(&g, &c, job.seed)?;
    let wanted = job.option("label").map(|s| s.to_string());
    if let Some(l) = &wanted {
        if part.block_of(l).is_none() {
            return Err(CliError::Core(Error::UnknownRep(l.clone())));
        }
    }
    let mut report = Report::new(job.clone());
    let mut rows = Vec::new();
    let mut table = Table::new(&["block", "distinguished", "endo", "e_i", "note"]);
    for b in &part.blocks {
        if let Some(l) = &wanted {
            if !b.labels.contains(l) {
                continue;
            }
        }
        let d = match distinguished_rep(&b.labels, &b.b_invariants) {
            Ok(d) => d,
            Err(e) => {
                rows.push(json!({ "labels": b.labels, "error": e.to_string() }));
                continue;
            }
        };
        let endo = endo_character(&g, &d, t)?;
        let mut entry = json!({
            "labels": b.labels,
            "distinguished": d,
            "endo": character_json(&endo),
        });
        let (eis_text, note) = if b.labels.len() == 1 {
            let eis = solve_eis(&g, &d, t)?;
            entry["eis"] = json!({
                "degrees": eis.factorization.degrees(),
                "reading": EIS_READING,
            });
            if let EisFactorization::Solved(_) = eis.factorization {
                entry["tor"] = bigraded_json(&tor_character(&g, &d, &eis.factorization, t)?);
                entry["ext"] = bigraded_json(&ext_character(&g, &d, &eis.factorization, t)?);
            } else {
                entry["eis_note"] = json!("no integers e_i reproduce the endomorphism character");
            }
            (eis.factorization.to_string(), String::new())
        } else {
            let note = "block is not a singleton: no e_i";
            entry["eis"] = json!({ "degrees": Value::Null, "reading": EIS_READING });
            entry["eis_note"] = json!(note);
            (EisFactorization::NoSolution.to_string(), note.to_string())
        };
        table.push(vec![b.labels.join(" "), d.clone(), endo.to_string(), eis_text, note]);
        rows.push(entry);
    }
    if job.flag("check-hook") {
        match symmetric_permutation_rank(&g) {
            Some(n) => {
                let mut hooks = BTreeMap::new();
                for b in &part.blocks {
                    for l in &b.labels {
                        if let Some(p) = cherednik_core::groups::symmetric::parse_partition(l) {
                            hooks.insert(l.clone(), hook_identity_check(n, &p, t)?);
                        }
                    }
                }
                report.checks.push(hook_check(n, t));
                report.data["hook"] = json!(hooks);
            }
            None => {
                return Err(CliError::Usage(
                    "--check-hook needs a symmetric group in its permutation representation".into(),
                ))
            }
        }
    }
    report.checks.extend(character_suite(&g, &part, t));
    report.data["group"] = json!(g.name());
    report.data["parameter"] = json!(c.to_string());
    report.data["truncation"] = json!(t);
    report.data["blocks_assumed_singleton"] = json!(assumed);
    report.data["characters"] = json!(rows);
    report.table = table;
    Ok(report)
}

pub fn cmd_reduce(job: JobSpec) -> Result<Report, CliError> {
    let g = one_group(&job)?;
    let c = one_parameter(&job, &g)?;
    let point_text = job
        .point
        .clone()
        .ok_or_else(|| CliError::Usage("--point is required".into()))?;
    let p = parse_point(&point_text)?;
    let t = job.truncation;
    let ctx = make_context(g.clone(), &c, &p)?;
    let part = reduced_partition(&ctx)?;
    let chars = reduced_endo_characters(&ctx, t)?;
    let mut report = Report::new(job.clone());
    let mut table = Table::new(&["irrep of W_p", "distinguished", "reduced endo"]);
    let mut rows = Vec::new();
    for b in &part.blocks {
        let d = distinguished_rep(&b.labels, &b.b_invariants)?;
        for l in &b.labels {
            table.push(vec![l.clone(), d.clone(), chars[l].to_string()]);
            rows.push(json!({ "label": l, "distinguished": d, "endo": character_json(&chars[l]) }));
        }
    }
    let show = |v: &[cherednik_core::Cyclotomic]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    report.data = json!({
        "group": g.name(),
        "parameter": c.to_string(),
        "point": show(&p),
        "orbit": ctx.orbit.iter().map(|q| show(q)).collect::<Vec<_>>(),
        "orbit_size": ctx.orbit_size(),
        "stabilizer": {
            "order": ctx.stabilizer.order(),
            "degrees": ctx.stabilizer.degrees(),
            "elements": ctx.embedding.iter().map(|&i| g.label(i).to_string()).collect::<Vec<_>>(),
        },
        "restricted_parameter": ctx.restricted_parameter.to_string(),
        "truncation": t,
        "blocks": blocks_json(&part),
        "characters": rows,
    });
    report.checks.push(Check::new(
        "parabolic/orbit-stabilizer",
        ctx.orbit_size() * ctx.stabilizer.order() == g.order(),
        format!("{} x {} vs |W| = {}", ctx.orbit_size(), ctx.stabilizer.order(), g.order()),
    ));
    let mut ok = 0;
    for w in 0..g.order() {
        if cherednik_core::parabolic::verify_reduction_invariance(g.clone(), &c, &p, w, t)? {
            ok += 1;
        }
    }
    report.checks.push(Check::new(
        "parabolic/orbit-invariance",
        ok == g.order(),
        format!("{}/{} group elements (to q^{})", ok, g.order(), t),
    ));
    if ctx.is_origin() {
        let mut same = true;
        for b in &part.blocks {
            let d = distinguished_rep(&b.labels, &b.b_invariants)?;
            same &= endo_character(&g, &d, t)?.agrees_to_order(&chars[&d], t);
        }
        report.checks.push(Check::new("parabolic/origin-identity", same, "reduction at p = 0"));
    }
    report.table = table;
    Ok(report)
}

pub fn cmd_bv_check(job: JobSpec) -> Result<Report, CliError> {
    let n: usize = job.option("n").unwrap_or("2").parse().map_err(|_| CliError::Usage("--n".into()))?;
    let samples: usize = job
        .option("samples")
        .unwrap_or("50")
        .parse()
        .map_err(|_| CliError::Usage("--samples".into()))?;
    let d = job.truncation;
    if !(2..=64).contains(&d) {
        return Err(CliError::Usage("--trunc must lie in 2..=64 for bv-check".into()));
    }
    let d = d as u32;
    let mut report = Report::new(job.clone());
    report.checks = bv_checks(&[n], &[d], samples, job.seed);
    let model = TruncatedPolyModel::new(n, d);
    let mut table = Table::new(&["side", "degree", "dimension"]);
    let mut homology = Vec::new();
    for side in [Side::Conormal, Side::Normal] {
        let h = model.virtual_homology(side);
        for (k, dim) in &h.dims {
            table.push(vec![side.to_string(), k.to_string(), dim.to_string()]);
        }
        homology.push(json!({
            "side": side.to_string(),
            "dims": h.dims,
            "total": h.total(),
            "observed_degrees": h.support(),
            "excluded_weights": h.excluded_weights,
        }));
    }
    let (koszul, tor, ext) = dual_verma_koszul(n, d)?;
    report.data = json!({
        "n": n,
        "truncation": d,
        "samples": samples,
        "homology": homology,
        "koszul": { "dims": koszul.dims, "tor_degrees": tor, "ext_degrees": ext },
    });
    report.table = table;
    Ok(report)
}

pub fn cmd_pbw(job: JobSpec) -> Result<Report, CliError> {
    let g = one_group(&job)?;
    let c = one_parameter(&job, &g)?;
    let engine = PbwEngine::new(g.clone(), &c);
    let a = engine.parse(job.option("a").ok_or_else(|| CliError::Usage("--a is required".into()))?)?;
    let b = engine.parse(job.option("b").unwrap_or("1"))?;
    let product = engine.multiply(&a, &b)?;
    let mut report = Report::new(job.clone());
    let mut table = Table::new(&["x", "w", "y", "coefficient"]);
    for ((xa, w, yb), v) in product.terms() {
        table.push(vec![format!("{:?}", xa), g.label(*w).to_string(), format!("{:?}", yb), v.to_string()]);
    }
    report.data = json!({
        "group": g.name(),
        "parameter": c.to_string(),
        "a": a.format(&g),
        "b": b.format(&g),
        "product": product.format(&g),
        "precision": "exact",
    });
    report.table = table;
    Ok(report)
}

pub const DEFAULT_GRID: [&str; 7] = ["Zm:2", "Zm:3", "Zm:4", "Sn:2", "Sn:3", "I2:3", "I2:4"];

fn grid_entry(g: &Arc<ReflectionGroup>, c: &Parameter, seed: u64, samples: usize, t: i64) -> Vec<Check> {
    let mut checks = pbw_suite(g, c, seed, samples);
    match RestrictedAlgebra::build(g.clone(), c, None) {
        Ok(alg) => {
            checks.push(dimension_check(&alg));
            let (pc, part) = partition_suite(&alg, seed);
            checks.extend(pc);
            if let Some(part) = part {
                checks.extend(theorem_suite(&alg, &part));
                checks.extend(character_suite(g, &part, t));
            }
        }
        Err(e) => checks.push(Check::error("restricted/build", e)),
    }
    if let Some(n) = symmetric_permutation_rank(g) {
        if c.claimed_generic {
            checks.push(hook_check(n, t));
        }
    }
    checks.extend(parabolic_suite(g, c, t, seed));
    checks
}

/// Every invariant suite over `groups x parameters`, then the BV checks.
pub fn cmd_verify(job: JobSpec) -> Result<Report, CliError> {
    if job.group.is_empty() {
        return Err(CliError::Usage("verify needs a non-empty group grid".into()));
    }
    let params: Vec<String> = if job.c.is_empty() {
        vec!["generic".into(), "zero".into()]
    } else {
        job.c.clone()
    };
    let samples: usize = job.option("samples").unwrap_or("100").parse().map_err(|_| CliError::Usage("--samples".into()))?;
    let t = job.truncation;
    let mut report = Report::new(job.clone());
    let mut table = Table::new(&["group", "c", "passed", "checks"]);
    let mut jobs = Vec::new();
    for spec in &job.group {
        let g = load_group(spec)?;
        for cs in &params {
            let c = load_parameter(&g, cs, job.seed)?;
            jobs.push((g.clone(), cs.clone(), c));
        }
    }
    // one thread per grid entry; results are collected in grid order
    let results: Vec<Vec<Check>> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(g, _, c)| s.spawn(move || grid_entry(g, c, job.seed, samples, t)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("grid entry panicked")).collect()
    });
    for ((g, cs, _), checks) in jobs.iter().zip(results) {
        let passed = checks.iter().filter(|k| k.pass).count();
        table.push(vec![g.name().to_string(), cs.clone(), passed.to_string(), checks.len().to_string()]);
        for k in checks {
            report
                .checks
                .push(Check::new(format!("{} c={}: {}", g.name(), cs, k.name), k.pass, k.detail));
        }
    }
    if !job.flag("no-bv") {
        let bv_samples: usize = job.option("bv-samples").unwrap_or("50").parse().map_err(|_| CliError::Usage("--bv-samples".into()))?;
        report.checks.extend(bv_checks(&[1, 2, 3], &[4, 6, 8], bv_samples, job.seed));
    }
    if let Some(fault) = job.option("inject-fault") {
        let mut hit = false;
        for k in report.checks.iter_mut().filter(|k| k.name.contains(fault)) {
            k.pass = false;
            k.detail = format!("injected fault; {}", k.detail);
            hit = true;
        }
        if !hit {
            return Err(CliError::Usage(format!("no check matches fault '{}'", fault)));
        }
    }
    report.data = json!({
        "grid": job.group,
        "parameters": params,
        "truncation": t,
        "failing": report.failing().iter().map(|k| k.name.clone()).collect::<Vec<_>>(),
    });
    report.table = table;
    Ok(report)
}
