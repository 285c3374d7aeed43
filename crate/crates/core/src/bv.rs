//! The flat model: `X = A^{2n}` with coordinates `x, y`, the Lagrangian
//! `Y = {y = 0}`, and the two exterior algebras along `Y` with their BV
//! differentials.
//!
//! Conventions. `P = sum_i d/dy_i ^ d/dx_i` and `i_P(dx_i ^ dy_j) = -delta_ij`.
//! On the conormal side an element is `f(x) dy_S`; `d` then `i_P` gives
//! `delta(f dy_S) = -sum_{j in S} (df/dx_j) i_{d/dy_j}(dy_S)` while `d i_P`
//! vanishes on such representatives. On the normal side an element is
//! `f(x) d/dy_S` and `delta = [P, -] = sum_i (d/dy_i) ^ (df/dx_i)`, which raises
//! the exterior degree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::arith::{Cyclotomic, ExactMatrix, Rational};
use crate::error::{Error, Result};
use crate::poly::{monomial_degree, monomials_of_degree, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Conormal,
    Normal,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Conormal => write!(f, "conormal"),
            Side::Normal => write!(f, "normal"),
        }
    }
}

/// Key: exponent vector in `x`, and the set of exterior generators as a bitmask.
type Key = (Monomial, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    side: Side,
    n: usize,
    terms: BTreeMap<Key, Rational>,
}

fn below(mask: u32, j: usize) -> u32 {
    (mask & ((1u32 << j) - 1)).count_ones()
}

/// Sign of `e_S ^ e_T` against `e_{S u T}`, or `None` when they overlap.
fn wedge_sign(s: u32, t: u32) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    let mut inversions = 0;
    for j in 0..32 {
        if t & (1 << j) != 0 {
            inversions += (s >> (j + 1)).count_ones();
        }
    }
    Some(inversions % 2 == 1)
}

fn rat(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

impl ExteriorElement {
    pub fn zero(side: Side, n: usize) -> Self {
        assert!(n <= 16, "exterior rank too large");
        ExteriorElement {
            side,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(side: Side, n: usize) -> Self {
        Self::term(side, vec![0; n], 0, rat(1))
    }

    pub fn term(side: Side, monomial: Monomial, mask: u32, coeff: Rational) -> Self {
        let mut e = Self::zero(side, monomial.len());
        assert!(mask < (1 << e.n));
        e.add_term(monomial, mask, coeff);
        e
    }

    /// `x_i` in exterior degree zero.
    pub fn coordinate(side: Side, n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i] = 1;
        Self::term(side, m, 0, rat(1))
    }

    /// `dy_i` on the conormal side, `d/dy_i` on the normal side.
    pub fn generator(side: Side, n: usize, i: usize) -> Self {
        Self::term(side, vec![0; n], 1 << i, rat(1))
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Key, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, monomial: Monomial, mask: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let key = (monomial, mask);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn like(&self) -> Self {
        Self::zero(self.side, self.n)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((m, s), c) in &other.terms {
            out.add_term(m.clone(), *s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.like();
        for ((m, s), v) in &self.terms {
            out.add_term(m.clone(), *s, v * c);
        }
        out
    }

    /// Exterior degree, when homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|(_, s)| s.count_ones() as usize);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Largest polynomial degree of a coefficient.
    pub fn poly_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(m, _)| monomial_degree(m)).max()
    }

    /// Homogeneous pieces by exterior degree.
    pub fn components(&self) -> Vec<(usize, Self)> {
        let mut parts: BTreeMap<usize, Self> = BTreeMap::new();
        for ((m, s), c) in &self.terms {
            parts
                .entry(s.count_ones() as usize)
                .or_insert_with(|| self.like())
                .add_term(m.clone(), *s, c.clone());
        }
        parts.into_iter().collect()
    }

    /// Exterior product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        let mut out = self.like();
        for ((m1, s1), c1) in &self.terms {
            for ((m2, s2), c2) in &other.terms {
                let Some(neg) = wedge_sign(*s1, *s2) else { continue };
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let c = c1 * c2;
                out.add_term(m, s1 | s2, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    pub fn random(rng: &mut impl Rng, side: Side, n: usize, max_poly_degree: u32, max_terms: usize) -> Self {
        let k = rng.gen_range(0..=n);
        let masks: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() as usize == k).collect();
        let mut e = Self::zero(side, n);
        for _ in 0..rng.gen_range(1..=max_terms) {
            let deg = rng.gen_range(0..=max_poly_degree);
            let monos = monomials_of_degree(n, deg);
            let m = monos[rng.gen_range(0..monos.len())].clone();
            let mask = masks[rng.gen_range(0..masks.len())];
            let c = rng.gen_range(-3i64..=3);
            e.add_term(m, mask, rat(if c == 0 { 1 } else { c }));
        }
        e
    }
}

fn fmt_key(side: Side, m: &[u32], s: u32) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, e)),
        }
    }
    let gens: Vec<String> = (0..m.len())
        .filter(|j| s & (1 << j) != 0)
        .map(|j| match side {
            Side::Conormal => format!("dy{}", j + 1),
            Side::Normal => format!("Dy{}", j + 1),
        })
        .collect();
    if !gens.is_empty() {
        parts.push(gens.join("^"));
    }
    parts.join("*")
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((m, s), c)) in self.terms.iter().enumerate() {
            let body = fmt_key(self.side, m, *s);
            let abs = c.abs();
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            let text = match (body.is_empty(), abs.is_one()) {
                (true, _) => coeff,
                (false, true) => body,
                (false, false) => format!("{}*{}", coeff, body),
            };
            let sign = match (i == 0, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            write!(f, "{}{}", sign, text)?;
        }
        Ok(())
    }
}

/// `A^{2n}` along `y = 0`, polynomial coefficients truncated at degree `truncation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncatedPolyModel {
    pub n: usize,
    pub truncation: u32,
}

impl TruncatedPolyModel {
    pub fn new(n: usize, truncation: u32) -> Self {
        TruncatedPolyModel { n, truncation }
    }

    pub fn delta(&self, a: &ExteriorElement) -> ExteriorElement {
        match a.side {
            Side::Conormal => delta_conormal(a),
            Side::Normal => delta_normal(a),
        }
    }

    /// `delta(ab) - delta(a) b - (-1)^{|a|} a delta(b)`, extended bilinearly.
    /// This is graded symmetric: `raw(a, b) = (-1)^{|a||b|} raw(b, a)`.
    pub fn bracket_raw(&self, a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
        self.bracket_with(&|e| self.delta(e), a, b)
    }

    /// The Gerstenhaber bracket `(-1)^{|a|} raw(a, b)`; with this sign the
    /// shifted antisymmetry, Leibniz and Jacobi rules hold.
    pub fn bracket(&self, a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
        let mut out = a.like();
        for (da, ai) in a.components() {
            out = out.add(&self.bracket_raw(&ai, b)?.scale(&sign(da)));
        }
        Ok(out)
    }

    pub fn bracket_with(
        &self,
        delta: &dyn Fn(&ExteriorElement) -> ExteriorElement,
        a: &ExteriorElement,
        b: &ExteriorElement,
    ) -> Result<ExteriorElement> {
        if a.side != b.side {
            return Err(Error::SideMismatch);
        }
        let mut out = a.like();
        for (da, ai) in a.components() {
            let t = delta(&ai.mul(b)?)
                .sub(&delta(&ai).mul(b)?)
                .sub(&ai.mul(&delta(b))?.scale(&sign(da)));
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Both sides of the seven-term identity for `delta`, on homogeneous pieces.
    pub fn seven_term_with(
        &self,
        delta: &dyn Fn(&ExteriorElement) -> ExteriorElement,
        a: &ExteriorElement,
        b: &ExteriorElement,
        c: &ExteriorElement,
    ) -> Result<bool> {
        if a.side != b.side || b.side != c.side {
            return Err(Error::SideMismatch);
        }
        for (da, ai) in a.components() {
            for (db, bi) in b.components() {
                let ab = ai.mul(&bi)?;
                let lhs = delta(&ab.mul(c)?);
                let rhs = delta(&ab)
                    .mul(c)?
                    .add(&ai.mul(&delta(&bi.mul(c)?))?.scale(&sign(da)))
                    .add(&bi.mul(&delta(&ai.mul(c)?))?.scale(&sign((da + 1) * db)))
                    .sub(&delta(&ai).mul(&bi)?.mul(c)?)
                    .sub(&ai.mul(&delta(&bi))?.mul(c)?.scale(&sign(da)))
                    .sub(&ab.mul(&delta(c))?.scale(&sign(da + db)));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn check_bv_seven_term(&self, a: &ExteriorElement, b: &ExteriorElement, c: &ExteriorElement) -> Result<bool> {
        self.seven_term_with(&|e| self.delta(e), a, b, c)
    }

    /// Graded antisymmetry, Leibniz and Jacobi on homogeneous `a, b, c`.
    pub fn check_bracket_axioms(&self, a: &ExteriorElement, b: &ExteriorElement, c: &ExteriorElement) -> Result<BracketAxioms> {
        // zero counts as homogeneous of any degree
        let deg = |e: &ExteriorElement| if e.is_zero() { Some(0) } else { e.degree() };
        let (Some(da), Some(db)) = (deg(a), deg(b)) else {
            return Err(Error::InvalidParameter("bracket axioms need homogeneous elements".into()));
        };
        let ab = self.bracket(a, b)?;
        let ba = self.bracket(b, a)?;
        let eps_ab = parity_sign(da as i64 - 1, db as i64 - 1);
        let antisymmetry = ab == ba.scale(&(-eps_ab.clone()));
        // [a, bc] = [a,b] c + (-1)^{(|a|-1)|b|} b [a,c]
        let leibniz = self.bracket(a, &b.mul(c)?)?
            == ab.mul(c)?.add(&b.mul(&self.bracket(a, c)?)?.scale(&parity_sign(da as i64 - 1, db as i64)));
        // [a,[b,c]] = [[a,b],c] + (-1)^{(|a|-1)(|b|-1)} [b,[a,c]]
        let jacobi = self.bracket(a, &self.bracket(b, c)?)?
            == self
                .bracket(&ab, c)?
                .add(&self.bracket(b, &self.bracket(a, c)?)?.scale(&eps_ab));
        Ok(BracketAxioms {
            antisymmetry,
            leibniz,
            jacobi,
        })
    }

    /// Homology of `(wedge, delta)` over the weight pieces lying entirely
    /// inside the truncation. `delta` preserves `deg x - k` on the conormal
    /// side and `deg x + k` on the normal side.
    pub fn virtual_homology(&self, side: Side) -> HomologyReport {
        let n = self.n as i64;
        let d = self.truncation as i64;
        let (weights, excluded): (Vec<i64>, Vec<i64>) = match side {
            Side::Conormal => ((-n..=d - n).collect(), (d - n + 1..=d).collect()),
            Side::Normal => ((0..=d).collect(), Vec::new()),
        };
        let mut dims = vec![0usize; self.n + 1];
        for &m in &weights {
            let basis: Vec<Vec<Key>> = (0..=self.n).map(|k| self.weight_basis(side, m, k)).collect();
            let ranks: Vec<usize> = (0..=self.n)
                .map(|k| {
                    let target = match side {
                        Side::Conormal if k > 0 => k - 1,
                        Side::Normal if k < self.n => k + 1,
                        _ => return 0,
                    };
                    self.delta_rank(side, &basis[k], &basis[target])
                })
                .collect();
            for k in 0..=self.n {
                let incoming = match side {
                    Side::Conormal if k < self.n => ranks[k + 1],
                    Side::Normal if k > 0 => ranks[k - 1],
                    _ => 0,
                };
                dims[k] += basis[k].len() - ranks[k] - incoming;
            }
        }
        HomologyReport {
            side,
            n: self.n,
            truncation: self.truncation,
            dims: dims.into_iter().enumerate().collect(),
            excluded_weights: excluded,
        }
    }

    fn weight_basis(&self, side: Side, weight: i64, k: usize) -> Vec<Key> {
        let p = match side {
            Side::Conormal => weight + k as i64,
            Side::Normal => weight - k as i64,
        };
        if p < 0 || p > self.truncation as i64 {
            return Vec::new();
        }
        let masks: Vec<u32> = (0..1u32 << self.n).filter(|s| s.count_ones() as usize == k).collect();
        let mut out = Vec::new();
        for m in monomials_of_degree(self.n, p as u32) {
            for &s in &masks {
                out.push((m.clone(), s));
            }
        }
        out
    }

    fn delta_rank(&self, side: Side, source: &[Key], target: &[Key]) -> usize {
        if source.is_empty() || target.is_empty() {
            return 0;
        }
        let index: BTreeMap<&Key, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = ExactMatrix::zeros(target.len(), source.len());
        for (j, (mono, s)) in source.iter().enumerate() {
            let img = self.delta(&ExteriorElement::term(side, mono.clone(), *s, rat(1)));
            for (key, c) in img.terms() {
                let i = index[key];
                m.set(i, j, Cyclotomic::from_rational(c.clone()));
            }
        }
        m.rank()
    }
}

fn sign(k: usize) -> Rational {
    rat(if k.is_multiple_of(2) { 1 } else { -1 })
}

fn parity_sign(a: i64, b: i64) -> Rational {
    rat(if (a * b).rem_euclid(2) == 0 { 1 } else { -1 })
}

fn delta_conormal(a: &ExteriorElement) -> ExteriorElement {
    let mut out = a.like();
    for ((m, s), c) in &a.terms {
        for j in 0..a.n {
            if s & (1 << j) == 0 || m[j] == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[j] -= 1;
            let coeff = c * rat(m[j] as i64);
            // -(df/dx_j) i_{d/dy_j}(dy_S)
            let negative = below(*s, j).is_multiple_of(2);
            out.add_term(dm, s & !(1 << j), if negative { -coeff } else { coeff });
        }
    }
    out
}

fn delta_normal(a: &ExteriorElement) -> ExteriorElement {
    let mut out = a.like();
    for ((m, s), c) in &a.terms {
        for i in 0..a.n {
            if s & (1 << i) != 0 || m[i] == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm[i] -= 1;
            let coeff = c * rat(m[i] as i64);
            let negative = below(*s, i) % 2 == 1;
            out.add_term(dm, s | (1 << i), if negative { -coeff } else { coeff });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketAxioms {
    pub antisymmetry: bool,
    pub leibniz: bool,
    pub jacobi: bool,
}

impl BracketAxioms {
    pub fn all(&self) -> bool {
        self.antisymmetry && self.leibniz && self.jacobi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub side: Side,
    pub n: usize,
    pub truncation: u32,
    /// `(exterior degree, dimension)` for every degree `0..=n`.
    pub dims: Vec<(usize, usize)>,
    /// Weights cut by the truncation, left out of the count.
    pub excluded_weights: Vec<i64>,
}

impl HomologyReport {
    pub fn total(&self) -> usize {
        self.dims.iter().map(|(_, d)| d).sum()
    }

    /// Degrees carrying nonzero homology.
    pub fn support(&self) -> Vec<usize> {
        self.dims.iter().filter(|(_, d)| *d > 0).map(|(k, _)| *k).collect()
    }
}

/// Counts over one sampled run of the BV checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BvSuiteReport {
    pub n: usize,
    pub truncation: u32,
    pub samples: usize,
    pub delta_squared: usize,
    pub seven_term: usize,
    pub antisymmetry: usize,
    pub leibniz: usize,
    pub jacobi: usize,
    pub conormal: HomologyReport,
    pub normal: HomologyReport,
}

impl BvSuiteReport {
    /// Every count is over both sides, so a full pass is `2 * samples`.
    pub fn all_pass(&self) -> bool {
        let full = 2 * self.samples;
        [self.delta_squared, self.seven_term, self.antisymmetry, self.leibniz, self.jacobi]
            .iter()
            .all(|&c| c == full)
            && self.conormal.total() == 1
            && self.normal.total() == 1
    }
}

/// Sample `samples` homogeneous triples per side; products stay inside the truncation.
pub fn bv_suite(n: usize, truncation: u32, samples: usize, rng: &mut impl Rng) -> Result<BvSuiteReport> {
    let model = TruncatedPolyModel::new(n, truncation);
    let per_factor = (truncation / 3).max(1);
    let mut report = BvSuiteReport {
        n,
        truncation,
        samples,
        delta_squared: 0,
        seven_term: 0,
        antisymmetry: 0,
        leibniz: 0,
        jacobi: 0,
        conormal: model.virtual_homology(Side::Conormal),
        normal: model.virtual_homology(Side::Normal),
    };
    for side in [Side::Conormal, Side::Normal] {
        for _ in 0..samples {
            let a = ExteriorElement::random(rng, side, n, per_factor, 3);
            let b = ExteriorElement::random(rng, side, n, per_factor, 3);
            let c = ExteriorElement::random(rng, side, n, per_factor, 3);
            let abc = a.mul(&b)?.mul(&c)?;
            debug_assert!(abc.poly_degree().unwrap_or(0) <= truncation);
            if model.delta(&model.delta(&abc)).is_zero() {
                report.delta_squared += 1;
            }
            if model.check_bv_seven_term(&a, &b, &c)? {
                report.seven_term += 1;
            }
            let ax = model.check_bracket_axioms(&a, &b, &c)?;
            report.antisymmetry += ax.antisymmetry as usize;
            report.leibniz += ax.leibniz as usize;
            report.jacobi += ax.jacobi as usize;
        }
    }
    Ok(report)
}

/// Homology of the Koszul complex of `sequence` on `C[vars] / (killed vars)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulReport {
    pub truncation: u32,
    /// `dims[p][g]`: dimension of `H_p` in internal degree `g <= truncation`.
    pub dims: Vec<Vec<usize>>,
    /// `sum_p (-1)^p dim K_p` per internal degree, for the Euler check.
    pub chain_euler: Vec<i64>,
}

impl KoszulReport {
    pub fn totals(&self) -> Vec<usize> {
        self.dims.iter().map(|d| d.iter().sum()).collect()
    }

    pub fn homology_euler(&self) -> Vec<i64> {
        let width = self.truncation as usize + 1;
        (0..width)
            .map(|g| {
                self.dims
                    .iter()
                    .enumerate()
                    .map(|(p, d)| if p % 2 == 0 { d[g] as i64 } else { -(d[g] as i64) })
                    .sum()
            })
            .collect()
    }

    pub fn euler_consistent(&self) -> bool {
        self.homology_euler() == self.chain_euler
    }

    pub fn is_regular(&self) -> bool {
        self.dims.iter().skip(1).all(|d| d.iter().all(|&x| x == 0))
    }

    /// Fails on the first nonzero `H_p` with `p > 0`.
    pub fn require_regular(&self) -> Result<()> {
        for (p, d) in self.dims.iter().enumerate().skip(1) {
            let dim: usize = d.iter().sum();
            if dim > 0 {
                return Err(Error::NotRegularDetected { degree: p, dim });
            }
        }
        Ok(())
    }

    /// Homological degrees of nonzero homology.
    pub fn support(&self) -> Vec<usize> {
        self.totals()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(p, _)| p)
            .collect()
    }
}

/// A homogeneous polynomial as exponent vector -> coefficient.
pub type SparsePoly = BTreeMap<Monomial, Rational>;

pub fn variable(nvars: usize, i: usize) -> SparsePoly {
    let mut m = vec![0; nvars];
    m[i] = 1;
    BTreeMap::from([(m, rat(1))])
}

pub fn koszul_homology(nvars: usize, sequence: &[SparsePoly], killed: &[usize], truncation: u32) -> Result<KoszulReport> {
    let k = sequence.len();
    if k > 16 {
        return Err(Error::InvalidParameter("Koszul sequence too long".into()));
    }
    let mut degrees = Vec::with_capacity(k);
    for z in sequence {
        let degs: Vec<u32> = z.keys().map(|m| monomial_degree(m)).collect();
        match degs.first() {
            Some(&d) if d > 0 && degs.iter().all(|&e| e == d) => degrees.push(d),
            _ => return Err(Error::InvalidParameter("Koszul sequence must be homogeneous of positive degree".into())),
        }
        if z.keys().any(|m| m.len() != nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: z.keys().next().map(|m| m.len()).unwrap_or(0),
            });
        }
    }
    // the module basis in degree g: monomials avoiding the killed variables
    let module_basis = |g: i64| -> Vec<Monomial> {
        if g < 0 {
            return Vec::new();
        }
        monomials_of_degree(nvars, g as u32)
            .into_iter()
            .filter(|m| killed.iter().all(|&v| m[v] == 0))
            .collect()
    };
    let masks_of = |p: usize| -> Vec<u32> { (0..1u32 << k).filter(|s| s.count_ones() as usize == p).collect() };
    let chain = |p: usize, g: i64| -> Vec<(u32, Monomial)> {
        let mut out = Vec::new();
        for s in masks_of(p) {
            let shift: i64 = (0..k).filter(|i| s & (1 << i) != 0).map(|i| degrees[i] as i64).sum();
            for m in module_basis(g - shift) {
                out.push((s, m));
            }
        }
        out
    };
    let width = truncation as usize + 1;
    let mut dims = vec![vec![0usize; width]; k + 1];
    let mut chain_euler = vec![0i64; width];
    for g in 0..width as i64 {
        let chains: Vec<Vec<(u32, Monomial)>> = (0..=k).map(|p| chain(p, g)).collect();
        // rank of d_p : K_p -> K_{p-1}
        let mut ranks = vec![0usize; k + 2];
        for p in 1..=k {
            let src = &chains[p];
            let tgt = &chains[p - 1];
            if src.is_empty() || tgt.is_empty() {
                continue;
            }
            let index: BTreeMap<&(u32, Monomial), usize> = tgt.iter().enumerate().map(|(i, x)| (x, i)).collect();
            let mut mat = ExactMatrix::zeros(tgt.len(), src.len());
            for (j, (s, m)) in src.iter().enumerate() {
                for i in 0..k {
                    if s & (1 << i) == 0 {
                        continue;
                    }
                    let neg = below(*s, i) % 2 == 1;
                    for (zm, zc) in &sequence[i] {
                        let prod: Monomial = m.iter().zip(zm).map(|(a, b)| a + b).collect();
                        if killed.iter().any(|&v| prod[v] > 0) {
                            continue;
                        }
                        let row = index[&(s & !(1 << i), prod)];
                        let c = if neg { -zc.clone() } else { zc.clone() };
                        let cur = mat.get(row, j).clone();
                        mat.set(row, j, &cur + &Cyclotomic::from_rational(c));
                    }
                }
            }
            ranks[p] = mat.rank();
        }
        for p in 0..=k {
            let h = chains[p].len() - ranks[p] - ranks[p + 1];
            dims[p][g as usize] = h;
            let len = chains[p].len() as i64;
            chain_euler[g as usize] += if p % 2 == 0 { len } else { -len };
        }
    }
    Ok(KoszulReport {
        truncation,
        dims,
        chain_euler,
    })
}

/// `Tor` side of the dual Verma pairing in the flat model: the coordinate
/// sequence `y_1..y_n` on `C[x, y]/(x)`. Returns the Tor and Ext supports.
pub fn dual_verma_koszul(n: usize, truncation: u32) -> Result<(KoszulReport, Vec<usize>, Vec<usize>)> {
    let nvars = 2 * n;
    let sequence: Vec<SparsePoly> = (0..n).map(|i| variable(nvars, n + i)).collect();
    let killed: Vec<usize> = (0..n).collect();
    let report = koszul_homology(nvars, &sequence, &killed, truncation)?;
    let tor = report.support();
    let ext = tor.iter().map(|p| n - p).collect();
    Ok((report, tor, ext))
}
