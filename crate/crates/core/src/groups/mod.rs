//! Complex reflection groups with their reflection data and representations.

mod families;
pub mod parameter;
pub mod symmetric;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::arith::{Cyclotomic, CyclotomicField, ExactMatrix, Rational};
use crate::character::GradedCharacter;
use crate::error::{Error, Result};

pub use families::parse_group_spec;
pub use parameter::Parameter;

/// Largest group order we construct.
pub const MAX_ORDER: usize = 720;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SnRep {
    Permutation,
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    Symmetric(usize, SnRep),
    Dihedral(u32),
    Custom {
        conductor: u32,
        generators: Vec<ExactMatrix>,
    },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "Zm:{}", m),
            GroupSpec::Symmetric(n, SnRep::Permutation) => write!(f, "Sn:{}:permutation", n),
            GroupSpec::Symmetric(n, SnRep::Reduced) => write!(f, "Sn:{}:reduced", n),
            GroupSpec::Dihedral(m) => write!(f, "I2:{}", m),
            GroupSpec::Custom { conductor, generators } => {
                write!(f, "custom(N={}, {} generators)", conductor, generators.len())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reflection {
    pub element: usize,
    /// `alpha_s`, spanning the image of `s - 1` on `h`.
    pub root: Vec<Cyclotomic>,
    /// `alpha_s^vee`, spanning the image of `s - 1` on `h*`, scaled so that
    /// `coroot(root) = 2`.
    pub coroot: Vec<Cyclotomic>,
    pub class: String,
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub label: String,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct IrrRep {
    pub label: String,
    pub dim: usize,
    /// One matrix per group element, in group order.
    pub matrices: Vec<ExactMatrix>,
    /// Character value on each conjugacy class, in class order.
    pub character: Vec<Cyclotomic>,
}

impl IrrRep {
    pub fn is_trivial(&self) -> bool {
        self.dim == 1 && self.character.iter().all(|c| c.is_one())
    }
}

pub struct ReflectionGroup {
    name: String,
    rank: usize,
    field: Arc<CyclotomicField>,
    elements: Vec<ExactMatrix>,
    labels: Vec<String>,
    index: HashMap<ExactMatrix, usize>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    reflections: Vec<Reflection>,
    degrees: Vec<u32>,
    irreps: Option<Vec<IrrRep>>,
    /// One-line permutations when the group is a subgroup of a symmetric group.
    permutations: Option<Vec<Vec<usize>>>,
    table: OnceLock<Vec<Vec<usize>>>,
}

impl fmt::Debug for ReflectionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReflectionGroup({}, order {})", self.name, self.order())
    }
}

/// Raw data from which a group is assembled.
pub(crate) struct GroupData {
    pub name: String,
    pub rank: usize,
    pub field: Arc<CyclotomicField>,
    pub elements: Vec<ExactMatrix>,
    pub labels: Vec<String>,
    pub generators: Vec<usize>,
    pub permutations: Option<Vec<Vec<usize>>>,
}

/// Irreducible representations given as (label, matrix per element).
pub(crate) type IrrepData = Vec<(String, Vec<ExactMatrix>)>;

impl ReflectionGroup {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        families::build(spec)
    }

    pub(crate) fn assemble(data: GroupData, irreps: Option<IrrepData>) -> Result<Self> {
        let GroupData {
            name,
            rank,
            field,
            elements,
            labels,
            generators,
            permutations,
        } = data;
        let order = elements.len();
        if order > MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "group order",
                size: order,
                cap: MAX_ORDER,
            });
        }
        let index: HashMap<ExactMatrix, usize> =
            elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        if index.len() != order {
            return Err(Error::InvalidGroup("repeated group elements".into()));
        }
        let inverses: Vec<usize> = elements
            .iter()
            .map(|m| {
                let inv = m.inverse().ok_or_else(|| Error::InvalidGroup("singular matrix".into()))?;
                index
                    .get(&inv)
                    .copied()
                    .ok_or_else(|| Error::InvalidGroup("not closed under inverses".into()))
            })
            .collect::<Result<_>>()?;

        // Conjugacy classes: orbits under conjugation by the generators.
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &g in &generators {
                    let conj = &(&elements[g] * &elements[x]) * &elements[inverses[g]];
                    let y = *index
                        .get(&conj)
                        .ok_or_else(|| Error::InvalidGroup("not closed under conjugation".into()))?;
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                label: labels[start].clone(),
                elements: members,
            });
        }

        let identity = ExactMatrix::identity(rank);
        let mut reflections = Vec::new();
        for (i, s) in elements.iter().enumerate() {
            let diff = s - &identity;
            if diff.rank() != 1 {
                continue;
            }
            let root = first_nonzero_column(&diff);
            let dual = &elements[inverses[i]].transpose() - &identity;
            let coroot = first_nonzero_column(&dual);
            let pairing = dot(&coroot, &root);
            if pairing.is_zero() {
                return Err(Error::InvalidGroup(format!(
                    "element {} is not a diagonalizable reflection",
                    labels[i]
                )));
            }
            let scale = &Cyclotomic::from_int(2) / &pairing;
            reflections.push(Reflection {
                element: i,
                root,
                coroot: coroot.iter().map(|c| c * &scale).collect(),
                class: classes[class_of[i]].label.clone(),
            });
        }

        let mut group = ReflectionGroup {
            name,
            rank,
            field,
            elements,
            labels,
            index,
            inverses,
            generators,
            classes,
            class_of,
            reflections,
            degrees: Vec::new(),
            irreps: None,
            permutations,
            table: OnceLock::new(),
        };
        group.degrees = group.molien_degrees()?;
        if let Some(irreps) = irreps {
            group.irreps = Some(
                irreps
                    .into_iter()
                    .map(|(label, matrices)| {
                        let dim = matrices[0].rows();
                        let character = group
                            .classes
                            .iter()
                            .map(|c| matrices[c.elements[0]].trace())
                            .collect();
                        IrrRep {
                            label,
                            dim,
                            matrices,
                            character,
                        }
                    })
                    .collect(),
            );
        }
        Ok(group)
    }

    /// Group generated by the given matrices (closure by right multiplication).
    pub(crate) fn closure(
        name: String,
        field: Arc<CyclotomicField>,
        generators: &[ExactMatrix],
    ) -> Result<GroupData> {
        let rank = generators
            .first()
            .map(|g| g.rows())
            .ok_or_else(|| Error::InvalidGroup("no generators".into()))?;
        if generators.iter().any(|g| !g.is_square() || g.rows() != rank) {
            return Err(Error::InvalidGroup("generators must be square of equal size".into()));
        }
        let mut elements = vec![ExactMatrix::identity(rank)];
        let mut index = HashMap::from([(elements[0].clone(), 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        let mut gen_idx = vec![usize::MAX; generators.len()];
        while let Some(x) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let y = &elements[x] * g;
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= MAX_ORDER {
                            return Err(Error::CapExceeded {
                                what: "group order",
                                size: elements.len() + 1,
                                cap: MAX_ORDER,
                            });
                        }
                        let id = elements.len();
                        index.insert(y.clone(), id);
                        elements.push(y);
                        queue.push_back(id);
                        id
                    }
                };
                if x == 0 {
                    gen_idx[k] = id;
                }
            }
        }
        let labels = (0..elements.len())
            .map(|i| if i == 0 { "e".to_string() } else { format!("g{}", i) })
            .collect();
        let mut generators: Vec<usize> = gen_idx.into_iter().filter(|&g| g != 0).collect();
        generators.dedup();
        Ok(GroupData {
            name,
            rank,
            field,
            elements,
            labels,
            generators,
            permutations: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `dim h`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn elements(&self) -> &[ExactMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ExactMatrix {
        &self.elements[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn index_of(&self, m: &ExactMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn permutations(&self) -> Option<&[Vec<usize>]> {
        self.permutations.as_deref()
    }

    /// Index of `g_i g_j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        if let Some(t) = self.table.get() {
            return t[i][j];
        }
        self.index[&(&self.elements[i] * &self.elements[j])]
    }

    /// Full multiplication table, computed once on demand.
    pub fn multiplication_table(&self) -> &[Vec<usize>] {
        self.table.get_or_init(|| {
            (0..self.order())
                .map(|i| {
                    (0..self.order())
                        .map(|j| self.index[&(&self.elements[i] * &self.elements[j])])
                        .collect()
                })
                .collect()
        })
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    /// Labels of conjugacy classes consisting of reflections.
    pub fn reflection_classes(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.reflections {
            if !out.contains(&r.class) {
                out.push(r.class.clone());
            }
        }
        out
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn irreps(&self) -> Result<&[IrrRep]> {
        self.irreps
            .as_deref()
            .ok_or_else(|| Error::IrreduciblesUnavailable(self.name.clone()))
    }

    pub fn irrep(&self, label: &str) -> Result<&IrrRep> {
        let irreps = self.irreps()?;
        if let Some(r) = irreps.iter().find(|r| r.label == label) {
            return Ok(r);
        }
        // aliases for the one-dimensional characters
        let alias = match label {
            "triv" => irreps.iter().find(|r| r.is_trivial()),
            "sign" => irreps.iter().find(|r| {
                r.dim == 1
                    && self
                        .reflections
                        .iter()
                        .all(|s| r.character[self.class_of[s.element]] == Cyclotomic::from_int(-1))
            }),
            _ => None,
        };
        alias.ok_or_else(|| Error::UnknownRep(label.to_string()))
    }

    pub fn trivial_rep(&self) -> Result<&IrrRep> {
        self.irrep("triv")
    }

    /// Character value of `rep` at element `i`.
    pub fn character_at(&self, rep: &IrrRep, i: usize) -> Cyclotomic {
        rep.character[self.class_of[i]].clone()
    }

    /// Substitution matrix of `w` on the `x` variables (coordinates on `h`):
    /// `w . x_i = sum_l (w^-1)_{il} x_l`.
    pub fn x_substitution(&self, w: usize) -> ExactMatrix {
        self.elements[self.inverses[w]].clone()
    }

    /// Substitution matrix of `w` on the `y` variables (basis of `h`):
    /// `w . y_j = sum_l w_{lj} y_l`.
    pub fn y_substitution(&self, w: usize) -> ExactMatrix {
        self.elements[w].transpose()
    }

    /// Action of `w` on a point of `h*` (contragredient).
    pub fn act_on_dual(&self, w: usize, p: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.elements[self.inverses[w]].transpose().mul_vec(p)
    }

    /// `1/det(1 - q w)` to order `order`, one series per conjugacy class.
    fn class_series(&self, order: usize) -> Vec<Vec<Cyclotomic>> {
        self.classes
            .iter()
            .map(|c| {
                let cp = self.elements[c.elements[0]].characteristic_polynomial();
                // det(1 - q w) has q^j coefficient cp[n - j]
                let n = self.rank;
                let den: Vec<Cyclotomic> = (0..=n).map(|j| cp[n - j].clone()).collect();
                series_inverse(&den, order)
            })
            .collect()
    }

    fn molien_degrees(&self) -> Result<Vec<u32>> {
        let order = self.order() + 2;
        let series = self.class_series(order);
        let mut sum = vec![Cyclotomic::zero(); order];
        let w = Cyclotomic::from_int(self.order() as i64);
        for (c, s) in self.classes.iter().zip(&series) {
            let size = Cyclotomic::from_int(c.elements.len() as i64);
            for (acc, v) in sum.iter_mut().zip(s) {
                *acc += &(&size * v);
            }
        }
        let mut molien: Vec<Rational> = sum
            .iter()
            .map(|v| (v / &w).as_rational().cloned().ok_or(Error::NotFactorizable))
            .collect::<Result<_>>()?;
        // Peel factors 1/(1 - q^d) off the lowest positive term.
        let mut degrees = Vec::new();
        for _ in 0..self.rank {
            let Some(d) = (1..order).find(|&k| !molien[k].is_zero()) else {
                return Err(Error::NotFactorizable);
            };
            if molien[d] <= Rational::zero() {
                return Err(Error::NotFactorizable);
            }
            for k in (d..order).rev() {
                let prev = molien[k - d].clone();
                molien[k] -= prev;
            }
            degrees.push(d as u32);
        }
        if !molien[0].is_one() || molien[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotFactorizable);
        }
        Ok(degrees)
    }

    /// `f_lambda(q)`: graded multiplicity of `rep` in the coinvariants `C[h]^{coW}`.
    pub fn fake_polynomial(&self, rep: &IrrRep) -> GradedCharacter {
        let top: u32 = self.degrees.iter().map(|d| d - 1).sum();
        let order = top as usize + 1;
        let series = self.class_series(order);
        let w = Cyclotomic::from_int(self.order() as i64);
        let mut sum = vec![Cyclotomic::zero(); order];
        for ((c, s), chi) in self.classes.iter().zip(&series).zip(&rep.character) {
            let weight = &(&Cyclotomic::from_int(c.elements.len() as i64) * chi) / &w;
            for (acc, v) in sum.iter_mut().zip(s) {
                *acc += &(&weight * v);
            }
        }
        let series = GradedCharacter::from_terms(
            sum.into_iter().enumerate().map(|(k, v)| {
                let r = v
                    .as_rational()
                    .cloned()
                    .expect("graded multiplicities are rational");
                (k as i64, r)
            }),
            Some(order as i64),
        );
        let poly = series.mul(&GradedCharacter::one_minus_product(&self.degrees));
        GradedCharacter::from_terms(poly.terms().clone(), None)
    }

    /// `lambda*`: the representation with character `g -> chi(g^-1)`.
    pub fn dual_rep(&self, rep: &IrrRep) -> Result<&IrrRep> {
        let target: Vec<Cyclotomic> = self
            .classes
            .iter()
            .map(|c| rep.character[self.class_of[self.inverses[c.elements[0]]]].clone())
            .collect();
        self.irreps()?
            .iter()
            .find(|r| r.character == target)
            .ok_or_else(|| Error::UnknownRep(format!("dual of {}", rep.label)))
    }

    /// `(1/|W|) sum_w chi(w) psi(w^-1)`.
    pub fn character_inner_product(&self, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (k, c) in self.classes.iter().enumerate() {
            let inv_class = self.class_of[self.inverses[c.elements[0]]];
            let t = &chi[k] * &psi[inv_class];
            acc += &(&Cyclotomic::from_int(c.elements.len() as i64) * &t);
        }
        &acc / &Cyclotomic::from_int(self.order() as i64)
    }

    /// Stabilizer of `p` in `h*`, with the Steinberg check.
    pub fn stabilizer(&self, p: &[Cyclotomic]) -> Result<ReflectionGroup> {
        let members: Vec<usize> = (0..self.order()).filter(|&w| self.act_on_dual(w, p) == p).collect();
        let name = if members.len() == self.order() {
            self.name.clone()
        } else {
            format!("Stab({})", self.name)
        };
        self.subgroup(&members, name)
    }

    /// Subgroup on the listed elements (must contain the identity at index 0).
    pub fn subgroup(&self, members: &[usize], name: String) -> Result<ReflectionGroup> {
        assert_eq!(members.first(), Some(&0), "subgroup must list the identity first");
        // Steinberg: the reflections in the subgroup generate it.
        let refl: Vec<usize> = self
            .reflections
            .iter()
            .map(|r| r.element)
            .filter(|e| members.contains(e))
            .collect();
        let mut generated = vec![0usize];
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in &refl {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    generated.push(y);
                    queue.push_back(y);
                }
            }
        }
        if generated.len() != members.len() {
            return Err(Error::NotSteinberg {
                stabilizer: members.len(),
                generated: generated.len(),
            });
        }
        let data = GroupData {
            name,
            rank: self.rank,
            field: self.field.clone(),
            elements: members.iter().map(|&i| self.elements[i].clone()).collect(),
            labels: members.iter().map(|&i| self.labels[i].clone()).collect(),
            generators: refl
                .iter()
                .map(|e| members.iter().position(|m| m == e).unwrap())
                .collect(),
            permutations: self
                .permutations
                .as_ref()
                .map(|p| members.iter().map(|&i| p[i].clone()).collect()),
        };
        let irreps = families::subgroup_irreps(self, members, &data)?;
        let group = Self::assemble(data, irreps)?;
        Ok(group)
    }
}

fn first_nonzero_column(m: &ExactMatrix) -> Vec<Cyclotomic> {
    (0..m.cols())
        .map(|j| m.column(j))
        .find(|c| c.iter().any(|v| !v.is_zero()))
        .expect("nonzero matrix")
}

pub(crate) fn dot(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Power series `1/p(q)` to `order` terms; requires `p(0) = 1`.
fn series_inverse(p: &[Cyclotomic], order: usize) -> Vec<Cyclotomic> {
    debug_assert!(p[0].is_one());
    let mut out: Vec<Cyclotomic> = Vec::with_capacity(order);
    for k in 0..order {
        let mut acc = if k == 0 { Cyclotomic::one() } else { Cyclotomic::zero() };
        for j in 1..=k.min(p.len() - 1) {
            if !p[j].is_zero() {
                acc -= &(&p[j] * &out[k - j]);
            }
        }
        out.push(acc);
    }
    out
}

/// `b_lambda`: lowest exponent of a fake polynomial.
pub fn b_invariant(f: &GradedCharacter) -> Result<i64> {
    f.lowest_exponent().ok_or(Error::ZeroPolynomial)
}
