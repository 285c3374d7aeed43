//! The group families we construct explicitly: `Z_m`, `S_n`, `I_2(m)`, plus
//! groups generated by user-supplied matrices.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::symmetric::{partition_label, partitions, seminormal_matrix, seminormal_simple, standard_tableaux};
use super::{GroupData, GroupSpec, IrrepData, ReflectionGroup, SnRep, MAX_ORDER};
use crate::arith::{Cyclotomic, CyclotomicField, ExactMatrix};
use crate::error::{Error, Result};

/// Parse `"Zm:5"`, `"Sn:4:permutation"`, `"Sn:3:reduced"`, `"I2:6"`.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let num = |t: &str| -> Result<u32> {
        t.parse::<u32>()
            .map_err(|_| Error::InvalidGroup(format!("expected a number in '{}'", s)))
    };
    match parts.as_slice() {
        ["Zm", m] => {
            let m = num(m)?;
            if m == 0 {
                return Err(Error::InvalidGroup("Zm needs m >= 1".into()));
            }
            Ok(GroupSpec::Cyclic(m))
        }
        ["Sn", n] | ["Sn", n, "permutation"] => Ok(GroupSpec::Symmetric(num(n)? as usize, SnRep::Permutation)),
        ["Sn", n, "reduced"] => Ok(GroupSpec::Symmetric(num(n)? as usize, SnRep::Reduced)),
        ["I2", m] => {
            let m = num(m)?;
            if m == 0 {
                return Err(Error::InvalidGroup("I2 needs m >= 1".into()));
            }
            Ok(GroupSpec::Dihedral(m))
        }
        _ => Err(Error::InvalidGroup(format!("unrecognized group spec '{}'", s))),
    }
}

pub(super) fn build(spec: &GroupSpec) -> Result<ReflectionGroup> {
    match spec {
        GroupSpec::Cyclic(m) => cyclic(*m),
        GroupSpec::Symmetric(n, rep) => symmetric(*n, rep),
        GroupSpec::Dihedral(m) => dihedral(*m),
        GroupSpec::Custom {
            conductor,
            generators,
        } => {
            let field = CyclotomicField::new(*conductor);
            let gens: Vec<ExactMatrix> = generators
                .iter()
                .map(|g| g.map(|v| v.lift_to(&field)))
                .collect();
            let data = ReflectionGroup::closure(spec.to_string(), field, &gens)?;
            ReflectionGroup::assemble(data, None)
        }
    }
}

fn field_for(m: u32) -> Arc<CyclotomicField> {
    CyclotomicField::new(m.max(1))
}

fn scalar(c: Cyclotomic) -> ExactMatrix {
    ExactMatrix::from_rows(vec![vec![c]])
}

fn cyclic(m: u32) -> Result<ReflectionGroup> {
    if m as usize > MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "group order",
            size: m as usize,
            cap: MAX_ORDER,
        });
    }
    let zf = field_for(m);
    let elements: Vec<ExactMatrix> = (0..m as i64)
        .map(|k| scalar(Cyclotomic::root_of_unity(&zf, k)))
        .collect();
    let labels = (0..m)
        .map(|k| if k == 0 { "e".to_string() } else { format!("g{}", k) })
        .collect();
    let irreps: IrrepData = (0..m as i64)
        .map(|j| {
            let mats = (0..m as i64)
                .map(|k| scalar(Cyclotomic::root_of_unity(&zf, -j * k)))
                .collect();
            (format!("chi{}", j), mats)
        })
        .collect();
    let field = if m <= 2 { field_for(1) } else { zf };
    let data = GroupData {
        name: format!("Zm:{}", m),
        rank: 1,
        field,
        elements,
        labels,
        generators: if m > 1 { vec![1] } else { Vec::new() },
        permutations: None,
    };
    ReflectionGroup::assemble(data, Some(irreps))
}

fn permutation_matrix(perm: &[usize]) -> ExactMatrix {
    let n = perm.len();
    let mut m = ExactMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(j, i, Cyclotomic::one());
    }
    m
}

/// Matrix of a permutation on the basis `e_i - e_{i+1}`.
fn reduced_matrix(perm: &[usize]) -> ExactMatrix {
    let n = perm.len();
    let mut m = ExactMatrix::zeros(n - 1, n - 1);
    for i in 0..n - 1 {
        let (a, b) = (perm[i], perm[i + 1]);
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for l in lo..hi {
            m.set(l, i, Cyclotomic::from_int(sign));
        }
    }
    m
}

fn permutation_label(perm: &[usize]) -> String {
    let moved: Vec<usize> = (0..perm.len()).filter(|&i| perm[i] != i).collect();
    match moved.as_slice() {
        [] => "e".to_string(),
        [i, j] => format!("s{}{}", i + 1, j + 1),
        _ => format!("p{}", perm.iter().map(|p| (p + 1).to_string()).collect::<String>()),
    }
}

fn symmetric(n: usize, rep: &SnRep) -> Result<ReflectionGroup> {
    if n == 0 || n > 6 {
        return Err(Error::InvalidGroup(format!("Sn needs 1 <= n <= 6, got {}", n)));
    }
    if *rep == SnRep::Reduced && n < 2 {
        return Err(Error::InvalidGroup("reduced representation needs n >= 2".into()));
    }
    let parts = partitions(n);
    let tableaux: Vec<_> = parts.iter().map(|p| standard_tableaux(p)).collect();
    let simple: Vec<Vec<ExactMatrix>> = tableaux
        .iter()
        .map(|t| (0..n - 1).map(|k| seminormal_simple(t, k)).collect())
        .collect();

    // Breadth-first over right multiplication by simple transpositions.
    let identity: Vec<usize> = (0..n).collect();
    let mut perms = vec![identity.clone()];
    let mut rep_mats: Vec<Vec<ExactMatrix>> = vec![tableaux
        .iter()
        .map(|t| ExactMatrix::identity(t.len()))
        .collect()];
    let mut seen = HashMap::from([(identity, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for k in 0..n - 1 {
            let mut p = perms[x].clone();
            p.swap(k, k + 1); // p o s_k
            if seen.contains_key(&p) {
                continue;
            }
            seen.insert(p.clone(), perms.len());
            let mats = rep_mats[x]
                .iter()
                .zip(&simple)
                .map(|(m, s)| m * &s[k])
                .collect();
            perms.push(p);
            rep_mats.push(mats);
            queue.push_back(perms.len() - 1);
        }
    }
    let elements: Vec<ExactMatrix> = perms
        .iter()
        .map(|p| match rep {
            SnRep::Permutation => permutation_matrix(p),
            SnRep::Reduced => reduced_matrix(p),
        })
        .collect();
    let labels = perms.iter().map(|p| permutation_label(p)).collect();
    let generators = (0..n - 1)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(k, k + 1);
            seen[&p]
        })
        .collect();
    let irreps: IrrepData = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (partition_label(p), rep_mats.iter().map(|m| m[i].clone()).collect()))
        .collect();
    let name = match rep {
        SnRep::Permutation => format!("Sn:{}:permutation", n),
        SnRep::Reduced => format!("Sn:{}:reduced", n),
    };
    let data = GroupData {
        name,
        rank: elements[0].rows(),
        field: field_for(1),
        elements,
        labels,
        generators,
        permutations: Some(perms),
    };
    ReflectionGroup::assemble(data, Some(irreps))
}

/// Companion-form pair `(r, s)` with `t = trace(r)`.
fn dihedral_pair(t: &Cyclotomic) -> (ExactMatrix, ExactMatrix) {
    let (zero, one) = (Cyclotomic::zero(), Cyclotomic::one());
    let r = ExactMatrix::from_rows(vec![vec![zero.clone(), -&one], vec![one.clone(), t.clone()]]);
    let s = ExactMatrix::from_rows(vec![vec![one.clone(), t.clone()], vec![zero, -&one]]);
    (r, s)
}

fn dihedral(m: u32) -> Result<ReflectionGroup> {
    if 2 * m as usize > MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "group order",
            size: 2 * m as usize,
            cap: MAX_ORDER,
        });
    }
    let zf = field_for(m);
    let t_of = |j: i64| &Cyclotomic::root_of_unity(&zf, j) + &Cyclotomic::root_of_unity(&zf, -j);
    let (r, s) = match m {
        1 => (ExactMatrix::identity(2), ExactMatrix::from_i64(&[&[-1, 0], &[0, 1]])),
        2 => (ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]]), ExactMatrix::from_i64(&[&[1, 0], &[0, -1]])),
        _ => dihedral_pair(&t_of(1)),
    };
    let mut elements = Vec::new();
    let mut labels = Vec::new();
    let mut rk = ExactMatrix::identity(2);
    for k in 0..m {
        elements.push(rk.clone());
        labels.push(if k == 0 { "e".to_string() } else { format!("r{}", k) });
        rk = &rk * &r;
    }
    let mut rk = ExactMatrix::identity(2);
    for k in 0..m {
        elements.push(&rk * &s);
        labels.push(format!("s{}", k));
        rk = &rk * &r;
    }

    // One-dimensional characters by their values (a, b) on s0 = s and s1 = r s.
    let mut irreps: IrrepData = Vec::new();
    let mut signs = vec![(1i64, 1i64, "triv".to_string()), (-1, -1, "sign".to_string())];
    if m.is_multiple_of(2) {
        signs.push((1, -1, "chi(+,-)".to_string()));
        signs.push((-1, 1, "chi(-,+)".to_string()));
    }
    for (a, b, label) in signs {
        let ab = a * b;
        let mut mats = Vec::new();
        for k in 0..m {
            mats.push(scalar(Cyclotomic::from_int(ab.pow(k))));
        }
        for k in 0..m {
            mats.push(scalar(Cyclotomic::from_int(ab.pow(k) * a)));
        }
        irreps.push((label, mats));
    }
    for j in 1..=((m as i64 - 1) / 2) {
        let (rj, sj) = dihedral_pair(&t_of(j));
        let mut mats = Vec::new();
        let mut pw = ExactMatrix::identity(2);
        for _ in 0..m {
            mats.push(pw.clone());
            pw = &pw * &rj;
        }
        let mut pw = ExactMatrix::identity(2);
        for _ in 0..m {
            mats.push(&pw * &sj);
            pw = &pw * &rj;
        }
        irreps.push((format!("rho{}", j), mats));
    }
    let rational = matches!(m, 1 | 2 | 3 | 4 | 6);
    let data = GroupData {
        name: format!("I2:{}", m),
        rank: 2,
        field: if rational { field_for(1) } else { zf },
        elements,
        labels,
        generators: if m == 1 { vec![1] } else { vec![m as usize, m as usize + 1] },
        permutations: None,
    };
    ReflectionGroup::assemble(data, Some(irreps))
}

/// Irreducibles of a subgroup, for the shapes that arise as stabilizers of
/// our families: the whole group, the trivial group, cyclic groups, and Young
/// subgroups of symmetric groups.
pub(super) fn subgroup_irreps(
    parent: &ReflectionGroup,
    members: &[usize],
    data: &GroupData,
) -> Result<Option<IrrepData>> {
    let order = members.len();
    if order == parent.order() {
        return Ok(parent.irreps.as_ref().map(|irreps| {
            irreps
                .iter()
                .map(|r| (r.label.clone(), members.iter().map(|&i| r.matrices[i].clone()).collect()))
                .collect()
        }));
    }
    if order == 1 {
        return Ok(Some(vec![("triv".to_string(), vec![scalar(Cyclotomic::one())])]));
    }
    if let Some(perms) = &data.permutations {
        if let Some(irreps) = young_subgroup_irreps(perms) {
            return Ok(Some(irreps));
        }
    }
    // cyclic: look for an element of full order
    let local = |g: usize| members.iter().position(|&m| m == g);
    for &g in members.iter().skip(1) {
        let mut powers = vec![0usize];
        let mut x = g;
        while x != 0 {
            powers.push(local(x).expect("subgroup is closed"));
            x = parent.mul(x, g);
        }
        if powers.len() != order {
            continue;
        }
        // position in `members` of g^k is powers[k]
        let zf = field_for(order as u32);
        let conductor = parent.conductor().lcm(&(if order <= 2 { 1 } else { order as u32 }));
        let target = CyclotomicField::new(conductor);
        let mut irreps = Vec::new();
        for j in 0..order as i64 {
            let mut mats = vec![ExactMatrix::zeros(1, 1); order];
            for (k, &p) in powers.iter().enumerate() {
                let v = Cyclotomic::root_of_unity(&zf, -j * k as i64).lift_to(&target);
                mats[p] = scalar(v);
            }
            let label = if j == 0 { "triv".to_string() } else { format!("chi{}", j) };
            irreps.push((label, mats));
        }
        return Ok(Some(irreps));
    }
    Ok(None)
}

/// Irreducibles of a full Young subgroup `S_{B_1} x ... x S_{B_k}`, labelled by
/// tuples of partitions, or `None` if the permutations do not form one.
fn young_subgroup_irreps(perms: &[Vec<usize>]) -> Option<IrrepData> {
    let n = perms[0].len();
    // blocks = orbits of the subgroup on {0..n-1}
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if block_of[i] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = perms.iter().map(|p| p[i]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            block_of[j] = blocks.len();
        }
        blocks.push(orbit);
    }
    let factorial = |k: usize| (1..=k).product::<usize>();
    if blocks.iter().map(|b| factorial(b.len())).product::<usize>() != perms.len() {
        return None;
    }
    let block_parts: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| partitions(b.len())).collect();
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for parts in &block_parts {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                (0..parts.len()).map(move |i| {
                    let mut c = c.clone();
                    c.push(i);
                    c
                })
            })
            .collect();
    }
    let tableaux: Vec<Vec<_>> = block_parts
        .iter()
        .map(|parts| parts.iter().map(|p| standard_tableaux(p)).collect())
        .collect();
    let mut out = Vec::new();
    for combo in combos {
        let label = combo
            .iter()
            .enumerate()
            .map(|(b, &i)| partition_label(&block_parts[b][i]))
            .collect::<Vec<_>>()
            .join("x");
        let mats = perms
            .iter()
            .map(|p| {
                let mut m = ExactMatrix::identity(1);
                for (b, block) in blocks.iter().enumerate() {
                    let local: Vec<usize> = block
                        .iter()
                        .map(|&x| block.iter().position(|&y| y == p[x]).unwrap())
                        .collect();
                    m = m.kron(&seminormal_matrix(&tableaux[b][combo[b]], &local));
                }
                m
            })
            .collect();
        out.push((label, mats));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(parse_group_spec("Zm:5").unwrap(), GroupSpec::Cyclic(5));
        assert_eq!(
            parse_group_spec("Sn:4:permutation").unwrap(),
            GroupSpec::Symmetric(4, SnRep::Permutation)
        );
        assert_eq!(parse_group_spec("I2:6").unwrap(), GroupSpec::Dihedral(6));
        assert!(parse_group_spec("Sn:x").is_err());
        assert!(parse_group_spec("Foo:3").is_err());
        assert!(parse_group_spec("Zm:0").is_err());
    }

    #[test]
    fn reduced_matrices_are_multiplicative() {
        let a = vec![2, 0, 3, 1];
        let b = vec![1, 3, 0, 2];
        let ab: Vec<usize> = b.iter().map(|&i| a[i]).collect();
        assert_eq!(reduced_matrix(&ab), &reduced_matrix(&a) * &reduced_matrix(&b));
        assert_eq!(permutation_matrix(&ab), &permutation_matrix(&a) * &permutation_matrix(&b));
    }

    #[test]
    fn labels() {
        assert_eq!(permutation_label(&[0, 1, 2]), "e");
        assert_eq!(permutation_label(&[2, 1, 0]), "s13");
        assert_eq!(permutation_label(&[1, 2, 0]), "p231");
    }
}
