//! Transfer from a point `p` of `h*` to its stabilizer `W_p` at the origin.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::arith::Cyclotomic;
use crate::character::GradedCharacter;
use crate::error::{Error, Result};
use crate::groups::{Parameter, ReflectionGroup};
use crate::restricted::{cm_partition, distinguished_rep, BlockPartition, RestrictedAlgebra};
use crate::verma::endo_character;

pub struct ReductionContext {
    pub ambient: Arc<ReflectionGroup>,
    pub parameter: Parameter,
    pub point: Vec<Cyclotomic>,
    /// `W p`, starting with `p`, in order of first appearance over the group.
    pub orbit: Vec<Vec<Cyclotomic>>,
    pub stabilizer: Arc<ReflectionGroup>,
    /// Ambient indices of the stabilizer elements, in stabilizer order.
    pub embedding: Vec<usize>,
    pub restricted_parameter: Parameter,
}

impl ReductionContext {
    pub fn orbit_size(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_origin(&self) -> bool {
        self.point.iter().all(|v| v.is_zero())
    }
}

pub fn make_context(group: Arc<ReflectionGroup>, c: &Parameter, p: &[Cyclotomic]) -> Result<ReductionContext> {
    if p.len() != group.rank() {
        return Err(Error::DimensionMismatch {
            expected: group.rank(),
            got: p.len(),
        });
    }
    let mut orbit: Vec<Vec<Cyclotomic>> = Vec::new();
    for w in 0..group.order() {
        let q = group.act_on_dual(w, p);
        if !orbit.contains(&q) {
            orbit.push(q);
        }
    }
    let stabilizer = Arc::new(group.stabilizer(p)?);
    let embedding = (0..stabilizer.order())
        .map(|i| group.index_of(stabilizer.element(i)).expect("stabilizer lies in the group"))
        .collect();
    let restricted_parameter = c.restrict(&group, &stabilizer);
    Ok(ReductionContext {
        parameter: c.clone(),
        point: p.to_vec(),
        orbit,
        stabilizer,
        embedding,
        restricted_parameter,
        ambient: group,
    })
}

/// Endomorphism character of the block of `(W_p, c')` containing `label`,
/// computed at its distinguished member.
pub fn reduced_endo_character(ctx: &ReductionContext, label: &str, truncation: i64) -> Result<GradedCharacter> {
    let distinguished = reduced_distinguished(ctx, label)?;
    endo_character(&ctx.stabilizer, &distinguished, truncation)
}

pub fn reduced_distinguished(ctx: &ReductionContext, label: &str) -> Result<String> {
    let blocks = reduced_partition(ctx)?;
    let block = blocks
        .block_of(label)
        .ok_or_else(|| Error::UnknownRep(label.to_string()))?;
    distinguished_rep(&block.labels, &block.b_invariants)
}

/// The Calogero-Moser partition of `(W_p, c')`.
pub fn reduced_partition(ctx: &ReductionContext) -> Result<BlockPartition> {
    let alg = RestrictedAlgebra::build(ctx.stabilizer.clone(), &ctx.restricted_parameter, None)?;
    cm_partition(&alg, 0)
}

/// Reduced characters for every irreducible of `W_p`, sharing one block computation.
pub fn reduced_endo_characters(ctx: &ReductionContext, truncation: i64) -> Result<BTreeMap<String, GradedCharacter>> {
    let blocks = reduced_partition(ctx)?;
    let mut out = BTreeMap::new();
    for block in &blocks.blocks {
        let d = distinguished_rep(&block.labels, &block.b_invariants)?;
        let ch = endo_character(&ctx.stabilizer, &d, truncation)?;
        for l in &block.labels {
            out.insert(l.clone(), ch.clone());
        }
    }
    Ok(out)
}

/// The irreducible of `W_{w p}` obtained by conjugating `label` of `W_p` by `w`.
pub fn conjugate_rep(ctx: &ReductionContext, target: &ReductionContext, w: usize, label: &str) -> Result<String> {
    let g = &ctx.ambient;
    let rep = ctx.stabilizer.irrep(label)?;
    let winv = g.inverse(w);
    // (w.lambda)(h) = lambda(w^-1 h w)
    let character: Vec<Cyclotomic> = target
        .stabilizer
        .classes()
        .iter()
        .map(|class| {
            let h = target.embedding[class.elements[0]];
            let back = g.mul(g.mul(winv, h), w);
            let local = ctx
                .embedding
                .iter()
                .position(|&e| e == back)
                .expect("conjugate lies in the stabilizer");
            rep.character[ctx.stabilizer.class_of(local)].clone()
        })
        .collect();
    target
        .stabilizer
        .irreps()?
        .iter()
        .find(|r| r.character == character)
        .map(|r| r.label.clone())
        .ok_or_else(|| Error::UnknownRep(format!("conjugate of {}", label)))
}

/// The reduced character at `(p, lambda)` agrees with that at `(w p, w.lambda)`
/// for every irreducible `lambda` of `W_p`.
pub fn verify_reduction_invariance(
    group: Arc<ReflectionGroup>,
    c: &Parameter,
    p: &[Cyclotomic],
    w: usize,
    truncation: i64,
) -> Result<bool> {
    let ctx = make_context(group.clone(), c, p)?;
    let moved = group.act_on_dual(w, p);
    let target = make_context(group, c, &moved)?;
    if ctx.stabilizer.order() != target.stabilizer.order() {
        return Ok(false);
    }
    let here = reduced_endo_characters(&ctx, truncation)?;
    let there = reduced_endo_characters(&target, truncation)?;
    for rep in ctx.stabilizer.irreps()? {
        let image = conjugate_rep(&ctx, &target, w, &rep.label)?;
        if !here[&rep.label].agrees_to_order(&there[&image], truncation) {
            return Ok(false);
        }
    }
    Ok(true)
}
