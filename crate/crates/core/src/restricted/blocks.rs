use std::collections::BTreeSet;

use num_traits::Zero;

use super::algebra::RestrictedAlgebra;
use super::module::{commutant, simple_head, span_dim, FdModule};
use crate::arith::{idempotents_of_commutative_algebra, Cyclotomic, ExactMatrix, StructureConstants};
use crate::error::{Error, Result};
use crate::groups::{b_invariant, ReflectionGroup};

#[derive(Clone, Debug)]
pub struct Block {
    pub labels: Vec<String>,
    pub b_invariants: Vec<i64>,
    /// The central idempotent, as coordinates in the restricted algebra.
    pub idempotent: Vec<Cyclotomic>,
}

#[derive(Clone, Debug)]
pub struct BlockPartition {
    pub blocks: Vec<Block>,
}

impl BlockPartition {
    pub fn label_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.blocks
            .iter()
            .map(|b| b.labels.iter().cloned().collect())
            .collect()
    }

    pub fn is_all_singletons(&self) -> bool {
        self.blocks.iter().all(|b| b.labels.len() == 1)
    }

    pub fn block_of(&self, label: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.labels.iter().any(|l| l == label))
    }
}

/// Coordinates with respect to a linearly independent family, via a square
/// subsystem on pivot coordinates.
struct Coordinates {
    family: Vec<Vec<Cyclotomic>>,
    rows: Vec<usize>,
    inverse: ExactMatrix,
}

impl Coordinates {
    fn new(family: Vec<Vec<Cyclotomic>>) -> Self {
        let r = family.len();
        let rows = ExactMatrix::from_rows(family.clone()).rref().pivots;
        assert_eq!(rows.len(), r, "family must be independent");
        let square = ExactMatrix::from_rows(
            rows.iter()
                .map(|&i| family.iter().map(|z| z[i].clone()).collect())
                .collect(),
        );
        Coordinates {
            inverse: square.inverse().expect("pivot minor is invertible"),
            family,
            rows,
        }
    }

    fn of(&self, v: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        let sub: Vec<Cyclotomic> = self.rows.iter().map(|&i| v[i].clone()).collect();
        let coords = self.inverse.mul_vec(&sub);
        let mut back = vec![Cyclotomic::zero(); v.len()];
        for (c, z) in coords.iter().zip(&self.family) {
            if c.is_zero() {
                continue;
            }
            for (b, zi) in back.iter_mut().zip(z) {
                if !zi.is_zero() {
                    *b += &(c * zi);
                }
            }
        }
        (back == v).then_some(coords)
    }
}

/// Primitive idempotents of the (block part of the) centre, as algebra elements.
pub fn central_idempotents(alg: &RestrictedAlgebra, seed: u64) -> Result<Vec<Vec<Cyclotomic>>> {
    let z = alg.block_center()?;
    let r = z.len();
    let coords = Coordinates::new(z.clone());
    let mut table = vec![vec![Vec::new(); r]; r];
    for i in 0..r {
        for j in i..r {
            let prod = alg.multiply(&z[i], &z[j])?;
            let c = coords
                .of(&prod)
                .ok_or_else(|| Error::InvalidGroup("product of central elements left the centre".into()))?;
            table[j][i] = c.clone();
            table[i][j] = c;
        }
    }
    let unit = coords
        .of(&alg.unit())
        .ok_or_else(|| Error::InvalidGroup("unit is not in the computed centre".into()))?;
    let sc = StructureConstants { dim: r, unit, table };
    let idem = idempotents_of_commutative_algebra(&sc, alg.group().field(), seed)?;
    Ok(idem
        .into_iter()
        .map(|c| {
            let mut v = vec![Cyclotomic::zero(); alg.dim()];
            for (ck, zk) in c.iter().zip(&z) {
                if ck.is_zero() {
                    continue;
                }
                for (vi, zi) in v.iter_mut().zip(zk) {
                    if !zi.is_zero() {
                        *vi += &(ck * zi);
                    }
                }
            }
            v
        })
        .collect())
}

/// The Calogero-Moser partition: each irreducible goes to the unique central
/// idempotent acting as the identity on its baby Verma module.
pub fn cm_partition(alg: &RestrictedAlgebra, seed: u64) -> Result<BlockPartition> {
    let group = alg.group().clone();
    let idem = central_idempotents(alg, seed)?;
    let mut members: Vec<Vec<String>> = vec![Vec::new(); idem.len()];
    for rep in group.irreps()? {
        let module = alg.baby_verma(&rep.label)?;
        let mut owner = None;
        for (k, e) in idem.iter().enumerate() {
            let m = module.act(&alg.to_pbw(e))?;
            if m.is_identity() {
                if owner.replace(k).is_some() {
                    return Err(Error::AssignmentAmbiguous(rep.label.clone()));
                }
            } else if !m.is_zero() {
                return Err(Error::AssignmentAmbiguous(rep.label.clone()));
            }
        }
        let k = owner.ok_or_else(|| Error::AssignmentAmbiguous(rep.label.clone()))?;
        members[k].push(rep.label.clone());
    }
    let mut blocks: Vec<Block> = members
        .into_iter()
        .zip(idem)
        .map(|(labels, idempotent)| {
            let b_invariants = labels
                .iter()
                .map(|l| b_of(&group, l))
                .collect::<Result<Vec<_>>>()?;
            Ok(Block {
                labels,
                b_invariants,
                idempotent,
            })
        })
        .collect::<Result<_>>()?;
    let order: Vec<String> = group.irreps()?.iter().map(|r| r.label.clone()).collect();
    let first = |b: &Block| b.labels.first().and_then(|l| order.iter().position(|o| o == l));
    blocks.sort_by_key(|b| first(b).unwrap_or(usize::MAX));
    Ok(BlockPartition { blocks })
}

fn b_of(group: &ReflectionGroup, label: &str) -> Result<i64> {
    b_invariant(&group.fake_polynomial(group.irrep(label)?))
}

/// Central character of `Delta(0, lambda, b)`: the scalar by which each block
/// centre basis element acts (trace over dimension).
pub fn central_character(alg: &RestrictedAlgebra, label: &str) -> Result<Vec<Cyclotomic>> {
    let module = alg.baby_verma(label)?;
    let d = Cyclotomic::from_int(module.dim() as i64);
    alg.block_center()?
        .iter()
        .map(|z| Ok(&module.act(&alg.to_pbw(z))?.trace() / &d))
        .collect()
}

/// Partition of `Irr(W)` by equal central characters.
pub fn linking_partition(alg: &RestrictedAlgebra) -> Result<BTreeSet<BTreeSet<String>>> {
    let mut classes: Vec<(Vec<Cyclotomic>, BTreeSet<String>)> = Vec::new();
    for rep in alg.group().irreps()? {
        let chi = central_character(alg, &rep.label)?;
        match classes.iter_mut().find(|(c, _)| *c == chi) {
            Some((_, set)) => {
                set.insert(rep.label.clone());
            }
            None => classes.push((chi, BTreeSet::from([rep.label.clone()]))),
        }
    }
    Ok(classes.into_iter().map(|(_, s)| s).collect())
}

/// The unique member of minimal b-invariant.
pub fn distinguished_rep(labels: &[String], b_invariants: &[i64]) -> Result<String> {
    let min = *b_invariants.iter().min().ok_or_else(|| Error::TieDetected(Vec::new()))?;
    let tied: Vec<String> = labels
        .iter()
        .zip(b_invariants)
        .filter(|(_, &b)| b == min)
        .map(|(l, _)| l.clone())
        .collect();
    if tied.len() == 1 {
        Ok(tied[0].clone())
    } else {
        Err(Error::TieDetected(tied))
    }
}

/// `L(lambda)`: the head of the baby Verma module, checked to be simple.
pub fn simple_module(alg: &RestrictedAlgebra, label: &str) -> Result<FdModule> {
    let module = alg.baby_verma(label)?;
    let head = simple_head(&module, alg.group());
    let gens = head.module.generator_matrices(alg.group());
    let end = commutant(&gens, head.module.dim());
    if head.module.dim() == 0 || end.len() != 1 {
        return Err(Error::NotSimpleHead(format!(
            "head of Delta({}) has dimension {} and {} endomorphisms",
            label,
            head.module.dim(),
            end.len()
        )));
    }
    Ok(head.module)
}

/// `dim e L(lambda)` for the symmetrizer `e`.
pub fn dim_e_simple(alg: &RestrictedAlgebra, label: &str) -> Result<usize> {
    let l = simple_module(alg, label)?;
    Ok(l.symmetrizer().rank())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub dim_end: usize,
    pub dim_center_image: usize,
    pub surjective: bool,
}

/// Compare `End(Delta(0, lambda, b))` with the image of the whole centre.
pub fn center_surjectivity(alg: &RestrictedAlgebra, label: &str) -> Result<SurjectivityReport> {
    let module = alg.baby_verma(label)?;
    let gens = module.generator_matrices(alg.group());
    let dim_end = commutant(&gens, module.dim()).len();
    let mut images = Vec::new();
    for (_, piece) in alg.center()?.iter() {
        for z in piece {
            images.push(module.act(&alg.to_pbw(z))?);
        }
    }
    let dim_center_image = span_dim(&images);
    Ok(SurjectivityReport {
        dim_end,
        dim_center_image,
        surjective: dim_end == dim_center_image,
    })
}
