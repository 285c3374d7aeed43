use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{Cyclotomic, ExactMatrix};
use crate::error::{Error, Result};
use crate::groups::{Parameter, ReflectionGroup};
use crate::pbw::{skew_group_product, PbwElement, PbwEngine, DEFAULT_DEGREE_CAP};
use crate::poly::{monomial_degree, CoinvariantQuotient};

use super::module::{baby_verma, FdModule};

pub const DEFAULT_ALGEBRA_CAP: usize = 1000;

pub type SparseVec = Vec<(usize, Cyclotomic)>;

/// How products of PBW monomials are normal-ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductRule {
    /// Straightening against the defining relation.
    Straighten,
    /// The skew group algebra `C[h (+) h*] x| W`, valid only at `c = 0`.
    SkewGroup,
}

/// `H^b_c`: the quotient of `H_c` by `f - f(b)` for `f in C[h]^W_+` and by
/// `C[h*]^W_+`, with basis `(x-monomial, w, y-monomial)`.
pub struct RestrictedAlgebra {
    engine: PbwEngine,
    rule: ProductRule,
    xq: CoinvariantQuotient,
    yq: CoinvariantQuotient,
    point: Option<Vec<Cyclotomic>>,
    parameter: Parameter,
    products: Mutex<HashMap<(usize, usize), Arc<SparseVec>>>,
    center_cache: Mutex<Option<Arc<CenterPieces>>>,
    vermas: Mutex<HashMap<String, Arc<FdModule>>>,
}

/// Centre basis per grading degree (`None` when ungraded).
pub type CenterPieces = Vec<(Option<i64>, Vec<Vec<Cyclotomic>>)>;

impl RestrictedAlgebra {
    pub fn build(group: Arc<ReflectionGroup>, c: &Parameter, b: Option<&[Cyclotomic]>) -> Result<Self> {
        Self::build_with(group, c, b, ProductRule::Straighten, DEFAULT_ALGEBRA_CAP)
    }

    pub fn build_with(
        group: Arc<ReflectionGroup>,
        c: &Parameter,
        b: Option<&[Cyclotomic]>,
        rule: ProductRule,
        cap: usize,
    ) -> Result<Self> {
        let order = group.order();
        let dim = order * order * order;
        if dim > cap {
            return Err(Error::CapExceeded {
                what: "restricted algebra dimension",
                size: dim,
                cap,
            });
        }
        if rule == ProductRule::SkewGroup && !c.is_zero() {
            return Err(Error::InvalidParameter("the skew group product needs c = 0".into()));
        }
        let n = group.rank();
        if let Some(b) = b {
            if b.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: b.len() });
            }
        }
        let point = b.filter(|p| p.iter().any(|v| !v.is_zero())).map(|p| p.to_vec());
        let xs: Vec<ExactMatrix> = (0..order).map(|w| group.x_substitution(w)).collect();
        let ys: Vec<ExactMatrix> = (0..order).map(|w| group.y_substitution(w)).collect();
        let xq = CoinvariantQuotient::new(n, &xs, group.degrees(), point.as_deref())?;
        let yq = CoinvariantQuotient::new(n, &ys, group.degrees(), None)?;
        let top = xq.top_degree();
        let engine = PbwEngine::new(group, c).with_degree_cap(DEFAULT_DEGREE_CAP.max(2 * top + 2));
        Ok(RestrictedAlgebra {
            engine,
            rule,
            xq,
            yq,
            point,
            parameter: c.clone(),
            products: Mutex::new(HashMap::new()),
            center_cache: Mutex::new(None),
            vermas: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &Arc<ReflectionGroup> {
        self.engine.group()
    }

    pub fn engine(&self) -> &PbwEngine {
        &self.engine
    }

    pub fn parameter(&self) -> &Parameter {
        &self.parameter
    }

    pub fn rule(&self) -> ProductRule {
        self.rule
    }

    pub fn point(&self) -> Option<&[Cyclotomic]> {
        self.point.as_deref()
    }

    pub fn x_quotient(&self) -> &CoinvariantQuotient {
        &self.xq
    }

    pub fn y_quotient(&self) -> &CoinvariantQuotient {
        &self.yq
    }

    pub fn is_graded(&self) -> bool {
        self.point.is_none()
    }

    pub fn dim(&self) -> usize {
        self.xq.dim() * self.group().order() * self.yq.dim()
    }

    pub fn index(&self, xi: usize, w: usize, yi: usize) -> usize {
        (xi * self.group().order() + w) * self.yq.dim() + yi
    }

    pub fn key(&self, idx: usize) -> (usize, usize, usize) {
        let ny = self.yq.dim();
        let order = self.group().order();
        (idx / (ny * order), (idx / ny) % order, idx % ny)
    }

    pub fn basis_element(&self, idx: usize) -> PbwElement {
        let (xi, w, yi) = self.key(idx);
        PbwElement::monomial(
            self.xq.standard_monomials()[xi].clone(),
            w,
            self.yq.standard_monomials()[yi].clone(),
            Cyclotomic::one(),
        )
    }

    /// `deg x^a w y^b = |a| - |b|`.
    pub fn basis_degree(&self, idx: usize) -> i64 {
        let (xi, _, yi) = self.key(idx);
        monomial_degree(&self.xq.standard_monomials()[xi]) as i64
            - monomial_degree(&self.yq.standard_monomials()[yi]) as i64
    }

    /// Lift of a coordinate vector to `H_c`.
    pub fn to_pbw(&self, v: &[Cyclotomic]) -> PbwElement {
        let mut out = PbwElement::zero(self.group().rank());
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.basis_element(i), c);
            }
        }
        out
    }

    /// Image of an element of `H_c` in the quotient.
    pub fn reduce(&self, u: &PbwElement) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(); self.dim()];
        for ((a, w, b), c) in u.terms() {
            let xa = self.xq.reduce_monomial(a);
            let yb = self.yq.reduce_monomial(b);
            for (i, xv) in xa.iter().enumerate() {
                if xv.is_zero() {
                    continue;
                }
                let cx = c * xv;
                for (k, yv) in yb.iter().enumerate() {
                    if !yv.is_zero() {
                        out[self.index(i, *w, k)] += &(&cx * yv);
                    }
                }
            }
        }
        out
    }

    pub(crate) fn pbw_product(&self, u: &PbwElement, v: &PbwElement) -> Result<PbwElement> {
        match self.rule {
            ProductRule::Straighten => self.engine.multiply(u, v),
            ProductRule::SkewGroup => Ok(skew_group_product(self.group(), u, v)),
        }
    }

    /// Reduced product of two elements of `H_c`.
    pub fn multiply_pbw(&self, u: &PbwElement, v: &PbwElement) -> Result<Vec<Cyclotomic>> {
        Ok(self.reduce(&self.pbw_product(u, v)?))
    }

    /// Product of two basis elements (materialized on demand).
    pub fn product_basis(&self, i: usize, j: usize) -> Result<Arc<SparseVec>> {
        if let Some(p) = self.products.lock().unwrap().get(&(i, j)) {
            return Ok(p.clone());
        }
        let dense = self.multiply_pbw(&self.basis_element(i), &self.basis_element(j))?;
        let sparse: Arc<SparseVec> = Arc::new(
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        );
        self.products.lock().unwrap().insert((i, j), sparse.clone());
        Ok(sparse)
    }

    pub fn multiply(&self, u: &[Cyclotomic], v: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        let mut out = vec![Cyclotomic::zero(); self.dim()];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product_basis(i, j)?.iter() {
                    out[*k] += &(&ab * c);
                }
            }
        }
        Ok(out)
    }

    pub fn unit(&self) -> Vec<Cyclotomic> {
        self.reduce(&PbwElement::one(self.group().rank()))
    }

    /// Algebra generators `x_i`, `y_j` and the group generators.
    pub fn generators(&self) -> Vec<PbwElement> {
        let n = self.group().rank();
        let mut gens: Vec<PbwElement> = (0..n).map(|i| PbwElement::x(n, i)).collect();
        gens.extend((0..n).map(|j| PbwElement::y(n, j)));
        gens.extend(self.group().generators().iter().map(|&w| PbwElement::group(n, w)));
        gens
    }

    /// Basis of the centre in grading degree `d` (all of it when ungraded).
    pub fn center_of_degree(&self, d: Option<i64>) -> Result<Vec<Vec<Cyclotomic>>> {
        let dim = self.dim();
        let candidates: Vec<usize> = (0..dim)
            .filter(|&i| d.is_none_or(|d| self.basis_degree(i) == d))
            .collect();
        if candidates.is_empty() {
            return Ok(Vec::new());
        }
        let gens = self.generators();
        let mut columns: Vec<SparseVec> = Vec::with_capacity(candidates.len());
        for &i in &candidates {
            let b = self.basis_element(i);
            let mut col = SparseVec::new();
            for (g_idx, g) in gens.iter().enumerate() {
                let gb = self.multiply_pbw(g, &b)?;
                let bg = self.multiply_pbw(&b, g)?;
                for (k, (l, r)) in gb.iter().zip(&bg).enumerate() {
                    let v = l - r;
                    if !v.is_zero() {
                        col.push((g_idx * dim + k, v));
                    }
                }
            }
            columns.push(col);
        }
        Ok(kernel_of_sparse_columns(&columns)
            .into_iter()
            .map(|k| {
                let mut v = vec![Cyclotomic::zero(); dim];
                for (c, &i) in k.into_iter().zip(&candidates) {
                    v[i] = c;
                }
                v
            })
            .collect())
    }

    /// Centre, graded piece by graded piece.
    pub fn center(&self) -> Result<Arc<CenterPieces>> {
        if let Some(c) = self.center_cache.lock().unwrap().as_ref() {
            return Ok(c.clone());
        }
        let pieces = if self.is_graded() {
            let top = self.xq.top_degree() as i64;
            let mut out = Vec::new();
            for d in -top..=top {
                let z = self.center_of_degree(Some(d))?;
                if !z.is_empty() {
                    out.push((Some(d), z));
                }
            }
            out
        } else {
            vec![(None, self.center_of_degree(None)?)]
        };
        let pieces = Arc::new(pieces);
        *self.center_cache.lock().unwrap() = Some(pieces.clone());
        Ok(pieces)
    }

    /// The part of the centre that carries the central idempotents: degree
    /// zero in the graded case, everything otherwise.
    pub fn block_center(&self) -> Result<Vec<Vec<Cyclotomic>>> {
        let pieces = self.center()?;
        Ok(pieces
            .iter()
            .filter(|(d, _)| d.is_none() || *d == Some(0))
            .flat_map(|(_, z)| z.iter().cloned())
            .collect())
    }

    /// `Delta(0, lambda, b)`, cached by label.
    pub fn baby_verma(&self, label: &str) -> Result<Arc<FdModule>> {
        if let Some(m) = self.vermas.lock().unwrap().get(label) {
            return Ok(m.clone());
        }
        let m = Arc::new(baby_verma(self, label, None)?);
        self.vermas.lock().unwrap().insert(label.to_string(), m.clone());
        Ok(m)
    }

    /// `(uv)w = u(vw)` on random triples of basis combinations.
    pub fn check_associativity<R: Rng>(&self, rng: &mut R, samples: usize, support: usize) -> Result<bool> {
        let dim = self.dim();
        let random = |rng: &mut R| {
            let mut v = vec![Cyclotomic::zero(); dim];
            for _ in 0..support {
                v[rng.gen_range(0..dim)] = Cyclotomic::from_int(rng.gen_range(-3i64..=3));
            }
            v
        };
        for _ in 0..samples {
            let (u, v, w) = (random(rng), random(rng), random(rng));
            let left = self.multiply(&self.multiply(&u, &v)?, &w)?;
            let right = self.multiply(&u, &self.multiply(&v, &w)?)?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Kernel of the matrix whose columns are the given sparse vectors.
pub fn kernel_of_sparse_columns(columns: &[SparseVec]) -> Vec<Vec<Cyclotomic>> {
    let rows: BTreeSet<usize> = columns.iter().flat_map(|c| c.iter().map(|(r, _)| *r)).collect();
    let m = columns.len();
    if rows.is_empty() {
        return (0..m)
            .map(|i| {
                let mut v = vec![Cyclotomic::zero(); m];
                v[i] = Cyclotomic::one();
                v
            })
            .collect();
    }
    let row_index: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let mut mat = ExactMatrix::zeros(rows.len(), m);
    for (j, col) in columns.iter().enumerate() {
        for (r, v) in col {
            mat.set(row_index[r], j, v.clone());
        }
    }
    mat.kernel()
}
