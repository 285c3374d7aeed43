use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::algebra::{kernel_of_sparse_columns, RestrictedAlgebra, SparseVec};
use crate::arith::{Cyclotomic, EchelonSpan, ExactMatrix};
use crate::error::{Error, Result};
use crate::groups::ReflectionGroup;
use crate::pbw::{PbwElement, PbwEngine};
use crate::poly::monomial_degree;

/// A finite-dimensional module given by the matrices of `x_i`, `y_j` and of
/// every group element.
#[derive(Clone, Debug)]
pub struct FdModule {
    pub x: Vec<ExactMatrix>,
    pub y: Vec<ExactMatrix>,
    pub w: Vec<ExactMatrix>,
    /// Grading degree of each basis vector, when the module is graded.
    pub weights: Option<Vec<i64>>,
}

impl FdModule {
    pub fn dim(&self) -> usize {
        self.w[0].rows()
    }

    pub fn nvars(&self) -> usize {
        self.x.len()
    }

    /// Matrices of the algebra generators: `x_i`, `y_j`, then the group generators.
    pub fn generator_matrices(&self, group: &ReflectionGroup) -> Vec<ExactMatrix> {
        let mut out = self.x.clone();
        out.extend(self.y.iter().cloned());
        out.extend(group.generators().iter().map(|&g| self.w[g].clone()));
        out
    }

    /// Matrix of an element of `H_c`.
    pub fn act(&self, u: &PbwElement) -> Result<ExactMatrix> {
        if u.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: u.nvars(),
            });
        }
        let d = self.dim();
        // group terms as sum_a X^a (sum_w W_w (sum_b c Y^b))
        let mut by_a: BTreeMap<&Vec<u32>, BTreeMap<usize, Vec<(&Vec<u32>, &Cyclotomic)>>> = BTreeMap::new();
        for ((a, w, b), c) in u.terms() {
            by_a.entry(a).or_default().entry(*w).or_default().push((b, c));
        }
        let mut total = ExactMatrix::zeros(d, d);
        for (a, by_w) in by_a {
            let mut inner = ExactMatrix::zeros(d, d);
            for (w, ys) in by_w {
                let mut ysum = ExactMatrix::zeros(d, d);
                for (b, c) in ys {
                    ysum = &ysum + &power_product(&self.y, b).scale(c);
                }
                inner = &inner + &(&self.w[w] * &ysum);
            }
            total = &total + &(&power_product(&self.x, a) * &inner);
        }
        Ok(total)
    }

    /// Spot check of the defining relations on the module.
    pub fn satisfies_relations(&self, engine: &PbwEngine) -> bool {
        let group = engine.group();
        let n = self.nvars();
        for i in 0..n {
            for j in 0..n {
                if &self.x[i] * &self.x[j] != &self.x[j] * &self.x[i]
                    || &self.y[i] * &self.y[j] != &self.y[j] * &self.y[i]
                {
                    return false;
                }
                let comm = &(&self.y[j] * &self.x[i]) - &(&self.x[i] * &self.y[j]);
                let unit = |k: usize| -> Vec<Cyclotomic> {
                    (0..n).map(|l| if l == k { Cyclotomic::one() } else { Cyclotomic::zero() }).collect()
                };
                match self.act(&engine.commutator_yx(&unit(j), &unit(i))) {
                    Ok(m) if m == comm => {}
                    _ => return false,
                }
            }
        }
        for &g in group.generators() {
            for h in 0..group.order() {
                if self.w[group.mul(g, h)] != &self.w[g] * &self.w[h] {
                    return false;
                }
            }
            // w x_i w^-1 = w.x_i and w y_j w^-1 = w.y_j
            let gi = &self.w[group.inverse(g)];
            let xs = group.x_substitution(g);
            let ys = group.y_substitution(g);
            for i in 0..n {
                let lhs = &(&self.w[g] * &self.x[i]) * gi;
                let mut rhs = ExactMatrix::zeros(self.dim(), self.dim());
                for l in 0..n {
                    rhs = &rhs + &self.x[l].scale(xs.get(i, l));
                }
                if lhs != rhs {
                    return false;
                }
                let lhs = &(&self.w[g] * &self.y[i]) * gi;
                let mut rhs = ExactMatrix::zeros(self.dim(), self.dim());
                for l in 0..n {
                    rhs = &rhs + &self.y[l].scale(ys.get(i, l));
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Quotient by a submodule, on the basis of complement unit vectors.
    pub fn quotient(&self, sub: &EchelonSpan) -> FdModule {
        let comp = sub.complement();
        let q = |m: &ExactMatrix| -> ExactMatrix {
            let cols: Vec<Vec<Cyclotomic>> = comp
                .iter()
                .map(|&c| sub.quotient_coords(&m.column(c), &comp))
                .collect();
            if cols.is_empty() {
                ExactMatrix::zeros(0, 0)
            } else {
                ExactMatrix::from_columns(&cols)
            }
        };
        FdModule {
            x: self.x.iter().map(q).collect(),
            y: self.y.iter().map(q).collect(),
            w: self.w.iter().map(q).collect(),
            weights: self.weights.as_ref().map(|wt| comp.iter().map(|&c| wt[c]).collect()),
        }
    }

    /// Homogeneous components of a vector (the vector itself when ungraded).
    fn homogeneous_parts(&self, v: Vec<Cyclotomic>) -> Vec<Vec<Cyclotomic>> {
        let Some(wt) = &self.weights else {
            return vec![v];
        };
        let mut parts: BTreeMap<i64, Vec<Cyclotomic>> = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                parts.entry(wt[i]).or_insert_with(|| vec![Cyclotomic::zero(); v.len()])[i] = c.clone();
            }
        }
        parts.into_values().collect()
    }

    /// `sum_w w / |W|` acting on the module.
    pub fn symmetrizer(&self) -> ExactMatrix {
        let d = self.dim();
        let mut s = ExactMatrix::zeros(d, d);
        for m in &self.w {
            s = &s + m;
        }
        s.scale(&Cyclotomic::from_frac(1, self.w.len() as i64))
    }
}

fn power_product(mats: &[ExactMatrix], exps: &[u32]) -> ExactMatrix {
    let d = mats[0].rows();
    let mut out = ExactMatrix::identity(d);
    for (m, &e) in mats.iter().zip(exps) {
        if e > 0 {
            out = &out * &m.pow(e as u64);
        }
    }
    out
}

fn flatten(m: &ExactMatrix) -> Vec<Cyclotomic> {
    m.entries().cloned().collect()
}

fn unflatten(v: &[Cyclotomic], d: usize) -> ExactMatrix {
    ExactMatrix::from_rows(v.chunks(d).map(|r| r.to_vec()).collect())
}

/// `Delta(p, lambda, b) = (H_c (x)_{C[h*] x| W_p} lambda) / m_b`, where `C[h*]`
/// acts on `lambda` through evaluation at `p`. The basis is
/// `(x-monomial, coset representative of W/W_p, basis vector of lambda)`.
pub fn baby_verma(alg: &RestrictedAlgebra, label: &str, p: Option<&[Cyclotomic]>) -> Result<FdModule> {
    let group = alg.group().clone();
    let n = group.rank();
    if let Some(p) = p {
        if p.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: p.len() });
        }
    }
    let p: Vec<Cyclotomic> = p.map(|p| p.to_vec()).unwrap_or_else(|| vec![Cyclotomic::zero(); n]);
    let at_zero = p.iter().all(|v| v.is_zero());
    let stab_owned;
    let stab: &ReflectionGroup = if at_zero {
        &group
    } else {
        stab_owned = group.stabilizer(&p)?;
        &stab_owned
    };
    let lambda = stab.irrep(label)?;
    let dl = lambda.dim;
    // ambient index -> subgroup index
    let sub_of: Vec<Option<usize>> = (0..group.order())
        .map(|w| stab.index_of(group.element(w)))
        .collect();
    let members: Vec<usize> = (0..group.order()).filter(|&w| sub_of[w].is_some()).collect();
    let mut reps = Vec::new();
    let mut coset_of: Vec<Option<(usize, usize)>> = vec![None; group.order()];
    for t in 0..group.order() {
        if coset_of[t].is_some() {
            continue;
        }
        let m = reps.len();
        reps.push(t);
        for &u in &members {
            coset_of[group.mul(t, u)] = Some((m, sub_of[u].unwrap()));
        }
    }
    let ncos = reps.len();
    let xq = alg.x_quotient();
    let nx = xq.dim();
    let dim = nx * ncos * dl;
    let idx = |f: usize, m: usize, v: usize| (f * ncos + m) * dl + v;

    let apply = |h: &PbwElement| -> Result<ExactMatrix> {
        let mut mat = ExactMatrix::zeros(dim, dim);
        for f in 0..nx {
            for (m, &t) in reps.iter().enumerate() {
                let start = PbwElement::monomial(xq.standard_monomials()[f].clone(), t, vec![0; n], Cyclotomic::one());
                let prod = alg.pbw_product(h, &start)?;
                for ((g, s, beta), c) in prod.terms() {
                    let mut coeff = c.clone();
                    for (pj, &e) in p.iter().zip(beta) {
                        if e > 0 {
                            coeff = &coeff * &pj.pow(e);
                        }
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    let (m2, u) = coset_of[*s].unwrap();
                    let xr = xq.reduce_monomial(g);
                    let rho = &lambda.matrices[u];
                    for (f2, xv) in xr.iter().enumerate() {
                        if xv.is_zero() {
                            continue;
                        }
                        let cx = &coeff * xv;
                        for v in 0..dl {
                            for v2 in 0..dl {
                                let r = rho.get(v2, v);
                                if !r.is_zero() {
                                    let target = idx(f2, m2, v2);
                                    let old = mat.get(target, idx(f, m, v)).clone();
                                    mat.set(target, idx(f, m, v), &old + &(&cx * r));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(mat)
    };

    let x = (0..n).map(|i| apply(&PbwElement::x(n, i))).collect::<Result<Vec<_>>>()?;
    let y = (0..n).map(|j| apply(&PbwElement::y(n, j))).collect::<Result<Vec<_>>>()?;
    let w = (0..group.order())
        .map(|g| apply(&PbwElement::group(n, g)))
        .collect::<Result<Vec<_>>>()?;
    let weights = (at_zero && alg.is_graded()).then(|| {
        (0..dim)
            .map(|i| monomial_degree(&xq.standard_monomials()[i / (ncos * dl)]) as i64)
            .collect()
    });
    Ok(FdModule { x, y, w, weights })
}

/// Span of the image of the algebra generated by `gens` (with identity) in `End(K^d)`.
pub fn image_algebra(gens: &[ExactMatrix], d: usize) -> Vec<ExactMatrix> {
    let mut span = EchelonSpan::new(d * d);
    let mut basis = vec![ExactMatrix::identity(d)];
    span.insert(&flatten(&basis[0]));
    let mut next = 0;
    while next < basis.len() {
        let m = basis[next].clone();
        next += 1;
        for g in gens {
            let p = g * &m;
            if span.insert(&flatten(&p)) {
                basis.push(p);
            }
        }
    }
    basis
}

/// Jacobson radical of a matrix algebra via the trace form.
pub fn radical_of_matrix_algebra(basis: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let r = basis.len();
    if r == 0 {
        return Vec::new();
    }
    let d = basis[0].rows();
    let transposed: Vec<ExactMatrix> = basis.iter().map(|b| b.transpose()).collect();
    let mut gram = ExactMatrix::zeros(r, r);
    for k in 0..r {
        for l in k..r {
            let mut acc = Cyclotomic::zero();
            for (a, b) in basis[k].entries().zip(transposed[l].entries()) {
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            gram.set(k, l, acc.clone());
            gram.set(l, k, acc);
        }
    }
    gram.kernel()
        .into_iter()
        .map(|coeffs| {
            let mut m = ExactMatrix::zeros(d, d);
            for (c, b) in coeffs.iter().zip(basis) {
                if !c.is_zero() {
                    m = &m + &b.scale(c);
                }
            }
            m
        })
        .collect()
}

/// The head `M / J(A) M` together with the radical submodule.
pub struct Head {
    pub module: FdModule,
    pub radical: EchelonSpan,
}

pub fn simple_head(module: &FdModule, group: &ReflectionGroup) -> Head {
    let d = module.dim();
    let gens = module.generator_matrices(group);
    let image = image_algebra(&gens, d);
    let jac = radical_of_matrix_algebra(&image);
    let mut radical = EchelonSpan::new(d);
    for j in &jac {
        for c in 0..d {
            for part in module.homogeneous_parts(j.column(c)) {
                radical.insert(&part);
            }
        }
    }
    Head {
        module: module.quotient(&radical),
        radical,
    }
}

/// Basis of `End_A(M)` as the commutant of the generator matrices.
pub fn commutant(gens: &[ExactMatrix], d: usize) -> Vec<ExactMatrix> {
    let mut columns: Vec<SparseVec> = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let mut col = SparseVec::new();
            for (gi, g) in gens.iter().enumerate() {
                let off = gi * d * d;
                // (g T)_{ib} gets g_{ia}; (T g)_{ak} gets g_{bk}
                for i in 0..d {
                    let v = g.get(i, a);
                    if !v.is_zero() {
                        col.push((off + i * d + b, v.clone()));
                    }
                }
                for k in 0..d {
                    let v = g.get(b, k);
                    if !v.is_zero() {
                        col.push((off + a * d + k, -v.clone()));
                    }
                }
            }
            merge_duplicates(&mut col);
            columns.push(col);
        }
    }
    kernel_of_sparse_columns(&columns)
        .iter()
        .map(|v| unflatten(v, d))
        .collect()
}

fn merge_duplicates(col: &mut SparseVec) {
    col.sort_by_key(|(r, _)| *r);
    let mut merged: SparseVec = Vec::with_capacity(col.len());
    for (r, v) in col.drain(..) {
        match merged.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += &v,
            _ => merged.push((r, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    *col = merged;
}

/// Dimension of the span of a family of matrices.
pub fn span_dim(mats: &[ExactMatrix]) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let d = first.rows() * first.cols();
    let mut span = EchelonSpan::new(d);
    for m in mats {
        span.insert(&flatten(m));
    }
    span.dim()
}
