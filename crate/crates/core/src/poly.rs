//! Multivariate polynomials and coinvariant quotients `C[V] / (invariants)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::arith::{Cyclotomic, ExactMatrix};
use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

pub fn monomial_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// All exponent vectors of total degree `k` in `n` variables, lex-descending.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: u32, prefix: &mut Monomial, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(n, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        Self::term(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Cyclotomic::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::term(m, Cyclotomic::one())
    }

    pub fn term(m: Monomial, c: Cyclotomic) -> Self {
        let mut p = Poly::zero(m.len());
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> Cyclotomic {
        self.terms.get(m).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Cyclotomic) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, u * v);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).max()
    }

    /// Replace each variable `v_j` by `sum_l s[j][l] v_l`.
    pub fn substitute_linear(&self, s: &ExactMatrix) -> Poly {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|j| {
                let mut p = Poly::zero(self.nvars);
                for l in 0..self.nvars {
                    let mut m = vec![0; self.nvars];
                    m[l] = 1;
                    p.add_term(m, s.get(j, l).clone());
                }
                p
            })
            .collect();
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(self.nvars, c.clone());
            for (j, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((j, e))
                    .or_insert_with(|| images[j].pow(e))
                    .clone();
                acc = acc.mul(&pw);
            }
            out.add_scaled(&acc, &Cyclotomic::one());
        }
        out
    }

    pub fn evaluate(&self, point: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                t = &t * &x.pow(e);
            }
            acc += &t;
        }
        acc
    }
}

/// Invariants of degree `d` under the substitutions `subs` (one per group element).
pub fn invariants_of_degree(nvars: usize, d: u32, subs: &[ExactMatrix]) -> Vec<Poly> {
    let monos = monomials_of_degree(nvars, d);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for m in &monos {
        let mut avg = Poly::zero(nvars);
        let base = Poly::term(m.clone(), Cyclotomic::one());
        for s in subs {
            avg.add_scaled(&base.substitute_linear(s), &Cyclotomic::one());
        }
        if avg.is_zero() {
            continue;
        }
        let mut row = vec![Cyclotomic::zero(); monos.len()];
        for (mm, c) in avg.terms() {
            row[index[mm]] = c.clone();
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Vec::new();
    }
    let rref = ExactMatrix::from_rows(rows).rref();
    (0..rref.pivots.len())
        .map(|r| {
            let mut p = Poly::zero(nvars);
            for (i, c) in rref.matrix.row(r).iter().enumerate() {
                p.add_term(monos[i].clone(), c.clone());
            }
            p
        })
        .collect()
}

/// Reduction data for one degree: each non-standard monomial written as a
/// combination of standard ones plus generator multiples `mu * f`.
struct DegreeTable {
    /// non-standard monomial -> (standard coefficients, [(mu, invariant index, coeff)])
    rewrites: HashMap<Monomial, (Vec<(usize, Cyclotomic)>, Vec<(Monomial, usize, Cyclotomic)>)>,
}

/// `C[V] / (f - f(b) : f invariant of positive degree)` with a monomial basis
/// taken from the graded case `b = 0`.
pub struct CoinvariantQuotient {
    nvars: usize,
    top_degree: u32,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    tables: Vec<DegreeTable>,
    /// Values `f(b)` of the ideal generators; `None` means `b = 0`.
    generator_values: Option<Vec<Cyclotomic>>,
    memo: Mutex<HashMap<Monomial, Vec<Cyclotomic>>>,
}

impl CoinvariantQuotient {
    /// `subs` lists the substitution matrices of all group elements; `degrees`
    /// are the invariant degrees; `point` is `b` (coordinates of the fiber).
    pub fn new(
        nvars: usize,
        subs: &[ExactMatrix],
        degrees: &[u32],
        point: Option<&[Cyclotomic]>,
    ) -> Result<Self> {
        let order = subs.len();
        let top_degree: u32 = degrees.iter().map(|d| d - 1).sum();
        let max_d = degrees.iter().copied().max().unwrap_or(1);
        let mut invariants: Vec<Poly> = Vec::new();
        for d in 1..=max_d {
            invariants.extend(invariants_of_degree(nvars, d, subs));
        }
        let inv_degrees: Vec<u32> = invariants.iter().map(|f| f.degree().unwrap_or(0)).collect();
        let mut standard = Vec::new();
        let mut tables = Vec::new();
        for k in 0..=top_degree + 1 {
            let monos = monomials_of_degree(nvars, k);
            let col: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut gens: Vec<(Monomial, usize)> = Vec::new();
            for (t, &dt) in inv_degrees.iter().enumerate() {
                if dt <= k {
                    for mu in monomials_of_degree(nvars, k - dt) {
                        gens.push((mu, t));
                    }
                }
            }
            let ncols = monos.len();
            let ng = gens.len();
            let rows: Vec<Vec<Cyclotomic>> = gens
                .iter()
                .enumerate()
                .map(|(g, (mu, t))| {
                    let mut row = vec![Cyclotomic::zero(); ncols + ng];
                    let prod = Poly::term(mu.clone(), Cyclotomic::one()).mul(&invariants[*t]);
                    for (m, c) in prod.terms() {
                        row[col[m]] = c.clone();
                    }
                    row[ncols + g] = Cyclotomic::one();
                    row
                })
                .collect();
            let (pivots, matrix) = if rows.is_empty() {
                (Vec::new(), ExactMatrix::zeros(0, ncols))
            } else {
                let r = ExactMatrix::from_rows(rows).rref();
                (r.pivots, r.matrix)
            };
            let mono_pivots: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .filter(|(_, &p)| p < ncols)
                .map(|(r, &p)| (r, p))
                .collect();
            let pivot_cols: Vec<usize> = mono_pivots.iter().map(|&(_, p)| p).collect();
            let first_std = standard.len();
            let std_here: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
            if k == top_degree + 1 {
                if !std_here.is_empty() {
                    return Err(Error::DimensionMismatch {
                        expected: 0,
                        got: std_here.len(),
                    });
                }
            } else {
                standard.extend(std_here.iter().map(|&c| monos[c].clone()));
            }
            let std_pos: HashMap<usize, usize> = std_here
                .iter()
                .enumerate()
                .map(|(i, &c)| (c, first_std + i))
                .collect();
            let mut rewrites = HashMap::new();
            for (r, p) in mono_pivots {
                // row: m_p + sum_{s std} a_s s = sum_g lambda_g (mu_g f_g)
                let std_part: Vec<(usize, Cyclotomic)> = std_here
                    .iter()
                    .filter(|&&c| !matrix.get(r, c).is_zero())
                    .map(|&c| (std_pos[&c], -matrix.get(r, c)))
                    .collect();
                let gen_part: Vec<(Monomial, usize, Cyclotomic)> = (0..ng)
                    .filter(|&g| !matrix.get(r, ncols + g).is_zero())
                    .map(|g| (gens[g].0.clone(), gens[g].1, matrix.get(r, ncols + g).clone()))
                    .collect();
                rewrites.insert(monos[p].clone(), (std_part, gen_part));
            }
            tables.push(DegreeTable { rewrites });
        }
        if standard.len() != order {
            return Err(Error::DimensionMismatch {
                expected: order,
                got: standard.len(),
            });
        }
        let generator_values: Option<Vec<Cyclotomic>> = point
            .map(|b| invariants.iter().map(|f| f.evaluate(b)).collect::<Vec<_>>())
            .filter(|v| v.iter().any(|c| !c.is_zero()));
        let index = standard.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(CoinvariantQuotient {
            nvars,
            top_degree,
            standard,
            index,
            tables,
            generator_values,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn is_graded(&self) -> bool {
        self.generator_values.is_none()
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn standard_index(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a monomial in the standard basis.
    pub fn reduce_monomial(&self, m: &[u32]) -> Vec<Cyclotomic> {
        if let Some(&i) = self.index.get(m) {
            let mut v = vec![Cyclotomic::zero(); self.dim()];
            v[i] = Cyclotomic::one();
            return v;
        }
        if let Some(v) = self.memo.lock().unwrap().get(m) {
            return v.clone();
        }
        let v = self.reduce_uncached(m);
        self.memo.lock().unwrap().insert(m.to_vec(), v.clone());
        v
    }

    fn reduce_uncached(&self, m: &[u32]) -> Vec<Cyclotomic> {
        let dim = self.dim();
        let k = monomial_degree(m);
        let mut out = vec![Cyclotomic::zero(); dim];
        if k > self.top_degree + 1 {
            if self.generator_values.is_none() {
                return out;
            }
            // split off one variable and reduce in two steps
            let i = m.iter().position(|&e| e > 0).expect("positive degree");
            let mut rest = m.to_vec();
            rest[i] -= 1;
            let partial = self.reduce_monomial(&rest);
            for (s, c) in partial.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut shifted = self.standard[s].clone();
                shifted[i] += 1;
                let red = self.reduce_monomial(&shifted);
                for (o, v) in out.iter_mut().zip(&red) {
                    if !v.is_zero() {
                        *o += &(c * v);
                    }
                }
            }
            return out;
        }
        let (std_part, gen_part) = &self.tables[k as usize].rewrites[m];
        for (s, c) in std_part {
            out[*s] += c;
        }
        if let Some(vals) = &self.generator_values {
            for (mu, t, lam) in gen_part {
                if vals[*t].is_zero() {
                    continue;
                }
                let coeff = lam * &vals[*t];
                let red = self.reduce_monomial(mu);
                for (o, v) in out.iter_mut().zip(&red) {
                    if !v.is_zero() {
                        *o += &(&coeff * v);
                    }
                }
            }
        }
        out
    }

    pub fn reduce(&self, p: &Poly) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(); self.dim()];
        for (m, c) in p.terms() {
            let red = self.reduce_monomial(m);
            for (o, v) in out.iter_mut().zip(&red) {
                if !v.is_zero() {
                    *o += &(c * v);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CyclotomicField;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v)
    }

    fn s3_permutation() -> Vec<ExactMatrix> {
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        perms
            .iter()
            .map(|p| {
                let mut m = ExactMatrix::zeros(3, 3);
                for (i, &j) in p.iter().enumerate() {
                    m.set(i, j, c(1));
                }
                m
            })
            .collect()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 5), vec![vec![5]]);
        assert_eq!(monomials_of_degree(2, 1), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn symmetric_invariants_dimensions() {
        let subs = s3_permutation();
        let dims: Vec<usize> = (0..5).map(|d| invariants_of_degree(3, d, &subs).len()).collect();
        // partitions of d into parts of size at most 3
        assert_eq!(dims, vec![1, 1, 2, 3, 4]);
    }

    #[test]
    fn s3_coinvariants_graded_dims() {
        let q = CoinvariantQuotient::new(3, &s3_permutation(), &[1, 2, 3], None).unwrap();
        assert_eq!(q.dim(), 6);
        let mut by_degree = [0usize; 4];
        for m in q.standard_monomials() {
            by_degree[monomial_degree(m) as usize] += 1;
        }
        assert_eq!(by_degree, [1, 2, 2, 1]);
        // x1 + x2 + x3 = 0 in the quotient
        let e1 = Poly::var(3, 0).mul(&Poly::one(3));
        let sum = {
            let mut p = e1;
            p.add_scaled(&Poly::var(3, 1), &c(1));
            p.add_scaled(&Poly::var(3, 2), &c(1));
            p
        };
        assert!(q.reduce(&sum).iter().all(|v| v.is_zero()));
    }

    #[test]
    fn cyclic_fiber_at_nonzero_point() {
        // Z_3 acting on C by zeta: x^3 = b^3 in the fiber over b
        let f = CyclotomicField::new(3);
        let subs: Vec<ExactMatrix> = (0..3)
            .map(|k| ExactMatrix::from_rows(vec![vec![Cyclotomic::root_of_unity(&f, -k)]]))
            .collect();
        let b = c(2);
        let q = CoinvariantQuotient::new(1, &subs, &[3], Some(&[b])).unwrap();
        assert!(!q.is_graded());
        assert_eq!(q.reduce_monomial(&[3]), vec![c(8), c(0), c(0)]);
        assert_eq!(q.reduce_monomial(&[7]), vec![c(0), c(64), c(0)]);
    }
}
