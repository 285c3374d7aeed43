//! Normal-ordered arithmetic in `H_c = C[h] (x) CW (x) C[h*]` at `t = 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rand::Rng;

use crate::arith::{Cyclotomic, ExactMatrix};
use crate::error::{Error, Result};
use crate::groups::{parameter::parse_rational, Parameter, ReflectionGroup};
use crate::poly::{monomial_degree, Monomial, Poly};

pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// `(a, w, b)` standing for `x^a w y^b`.
pub type PbwKey = (Monomial, usize, Monomial);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwElement {
    nvars: usize,
    terms: BTreeMap<PbwKey, Cyclotomic>,
}

impl PbwElement {
    pub fn zero(nvars: usize) -> Self {
        PbwElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(a: Monomial, w: usize, b: Monomial, c: Cyclotomic) -> Self {
        let mut e = Self::zero(a.len());
        e.add_term((a, w, b), c);
        e
    }

    pub fn one(nvars: usize) -> Self {
        Self::group(nvars, 0)
    }

    pub fn group(nvars: usize, w: usize) -> Self {
        Self::monomial(vec![0; nvars], w, vec![0; nvars], Cyclotomic::one())
    }

    pub fn x(nvars: usize, i: usize) -> Self {
        let mut a = vec![0; nvars];
        a[i] = 1;
        Self::monomial(a, 0, vec![0; nvars], Cyclotomic::one())
    }

    pub fn y(nvars: usize, j: usize) -> Self {
        let mut b = vec![0; nvars];
        b[j] = 1;
        Self::monomial(vec![0; nvars], 0, b, Cyclotomic::one())
    }

    /// The symmetrizer `e = |W|^-1 sum_w w`.
    pub fn symmetrizer(group: &ReflectionGroup) -> Self {
        let n = group.rank();
        let c = Cyclotomic::from_frac(1, group.order() as i64);
        let mut e = Self::zero(n);
        for w in 0..group.order() {
            e.add_term((vec![0; n], w, vec![0; n]), c.clone());
        }
        e
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<PbwKey, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &PbwKey) -> Cyclotomic {
        self.terms.get(key).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn add_term(&mut self, key: PbwKey, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Cyclotomic) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Cyclotomic::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Cyclotomic::one());
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.nvars);
        out.add_scaled(self, c);
        out
    }

    /// `deg(x^a w y^b) = |a| - |b|`; `None` when the element is inhomogeneous.
    pub fn grading_degree(&self) -> Option<i64> {
        let mut degs = self
            .terms
            .keys()
            .map(|(a, _, b)| monomial_degree(a) as i64 - monomial_degree(b) as i64);
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    /// Largest `|a| + |b|` over the support.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, _, b)| monomial_degree(a) + monomial_degree(b))
            .max()
            .unwrap_or(0)
    }

    /// Terms of maximal y-degree: the principal symbol for the y-filtration.
    pub fn y_symbol(&self) -> Self {
        let top = self.terms.keys().map(|(_, _, b)| monomial_degree(b)).max();
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.terms {
            if Some(monomial_degree(&k.2)) == top {
                out.add_term(k.clone(), v.clone());
            }
        }
        out
    }

    /// Normal-ordered text using the group's element labels, e.g. `x1^2*s12*y1`.
    pub fn format(&self, group: &ReflectionGroup) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, ((a, w, b), c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in a.iter().enumerate() {
                push_power(&mut factors, 'x', i, e);
            }
            if *w != 0 {
                factors.push(group.label(*w).to_string());
            }
            for (j, &e) in b.iter().enumerate() {
                push_power(&mut factors, 'y', j, e);
            }
            let (neg, mag) = match c.as_rational() {
                Some(r) if r < &num_traits::zero() => (true, Cyclotomic::from_rational(-r.clone())),
                _ => (false, c.clone()),
            };
            if n > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let body = factors.join("*");
            if mag.is_one() {
                out.push_str(if body.is_empty() { "1" } else { &body });
            } else if body.is_empty() {
                let _ = write!(out, "{}", mag);
            } else {
                let _ = write!(out, "{}*{}", mag, body);
            }
        }
        out
    }
}

fn push_power(factors: &mut Vec<String>, v: char, i: usize, e: u32) {
    match e {
        0 => {}
        1 => factors.push(format!("{}{}", v, i + 1)),
        _ => factors.push(format!("{}{}^{}", v, i + 1, e)),
    }
}

fn parse_variable(f: &str, n: usize) -> Result<Option<PbwElement>> {
    let Some(kind) = f.chars().next().filter(|c| *c == 'x' || *c == 'y') else {
        return Ok(None);
    };
    let rest = &f[1..];
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, e),
        None => (rest, "1"),
    };
    let (Ok(i), Ok(e)) = (idx.parse::<usize>(), exp.parse::<u32>()) else {
        return Ok(None);
    };
    if i == 0 || i > n {
        return Err(Error::Parse(format!("variable '{}' out of range 1..{}", f, n)));
    }
    let mut m = vec![0; n];
    m[i - 1] = e;
    let zero = vec![0; n];
    Ok(Some(if kind == 'x' {
        PbwElement::monomial(m, 0, zero, Cyclotomic::one())
    } else {
        PbwElement::monomial(zero, 0, m, Cyclotomic::one())
    }))
}


/// Sum of `(x^gamma, s) -> coefficient` terms, i.e. an element of `C[h] (x) CW`.
type XGroupTerms = Vec<(Monomial, usize, Cyclotomic)>;

#[derive(Clone, Debug)]
struct ReflTerm {
    element: usize,
    root: Vec<Cyclotomic>,
    coroot: Vec<Cyclotomic>,
    c: Cyclotomic,
}

/// Multiplication in `H_c` for a fixed group and parameter.
pub struct PbwEngine {
    group: Arc<ReflectionGroup>,
    refl: Vec<ReflTerm>,
    /// `yx[j][i]`: `[y_j, x_i]` as `(reflection element, coefficient)`.
    yx: Vec<Vec<Vec<(usize, Cyclotomic)>>>,
    xsub: Vec<ExactMatrix>,
    ysub: Vec<ExactMatrix>,
    cap: u32,
    comm_memo: Mutex<HashMap<(usize, Monomial), Arc<XGroupTerms>>>,
    xact_memo: Mutex<HashMap<(usize, Monomial), Arc<Poly>>>,
    yact_memo: Mutex<HashMap<(usize, Monomial), Arc<Poly>>>,
}

impl PbwEngine {
    pub fn new(group: Arc<ReflectionGroup>, c: &Parameter) -> Self {
        let refl = group
            .reflections()
            .iter()
            .enumerate()
            .map(|(k, r)| ReflTerm {
                element: r.element,
                root: r.root.clone(),
                coroot: r.coroot.clone(),
                c: c.for_reflection(&group, k),
            })
            .collect();
        let xsub = (0..group.order()).map(|w| group.x_substitution(w)).collect();
        let ysub = (0..group.order()).map(|w| group.y_substitution(w)).collect();
        let mut engine = PbwEngine {
            group,
            refl,
            yx: Vec::new(),
            xsub,
            ysub,
            cap: DEFAULT_DEGREE_CAP,
            comm_memo: Mutex::new(HashMap::new()),
            xact_memo: Mutex::new(HashMap::new()),
            yact_memo: Mutex::new(HashMap::new()),
        };
        engine.rebuild_table();
        engine
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn group(&self) -> &Arc<ReflectionGroup> {
        &self.group
    }

    pub fn nvars(&self) -> usize {
        self.group.rank()
    }

    /// Replace `alpha_s` by `a * alpha_s` and `alpha_s^vee` by `b * alpha_s^vee`
    /// for the reflection at position `idx`.
    pub fn rescale_reflection(&mut self, idx: usize, a: &Cyclotomic, b: &Cyclotomic) {
        let r = &mut self.refl[idx];
        r.root = r.root.iter().map(|v| v * a).collect();
        r.coroot = r.coroot.iter().map(|v| v * b).collect();
        self.rebuild_table();
    }

    fn rebuild_table(&mut self) {
        let n = self.nvars();
        let unit = |k: usize| -> Vec<Cyclotomic> {
            (0..n)
                .map(|i| if i == k { Cyclotomic::one() } else { Cyclotomic::zero() })
                .collect()
        };
        self.yx = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let e = self.commutator_yx(&unit(j), &unit(i));
                        e.terms.iter().map(|((_, s, _), v)| (*s, v.clone())).collect()
                    })
                    .collect()
            })
            .collect();
        self.comm_memo.lock().unwrap().clear();
    }

    /// `[y, x] = sum_s c(s) x(alpha_s) alpha_s^vee(y) / alpha_s^vee(alpha_s) s`.
    pub fn commutator_yx(&self, y: &[Cyclotomic], x: &[Cyclotomic]) -> PbwElement {
        let n = self.nvars();
        let mut out = PbwElement::zero(n);
        for r in &self.refl {
            if r.c.is_zero() {
                continue;
            }
            let pairing = dot(&r.coroot, &r.root);
            let v = &(&(&r.c * &dot(x, &r.root)) * &dot(&r.coroot, y)) / &pairing;
            out.add_term((vec![0; n], r.element, vec![0; n]), v);
        }
        out
    }

    /// `w . x^a` as a polynomial in the x's.
    fn act_x(&self, w: usize, a: &Monomial) -> Arc<Poly> {
        let key = (w, a.clone());
        if let Some(p) = self.xact_memo.lock().unwrap().get(&key) {
            return p.clone();
        }
        let p = Arc::new(Poly::term(a.clone(), Cyclotomic::one()).substitute_linear(&self.xsub[w]));
        self.xact_memo.lock().unwrap().insert(key, p.clone());
        p
    }

    /// `w . y^b` as a polynomial in the y's.
    fn act_y(&self, w: usize, b: &Monomial) -> Arc<Poly> {
        let key = (w, b.clone());
        if let Some(p) = self.yact_memo.lock().unwrap().get(&key) {
            return p.clone();
        }
        let p = Arc::new(Poly::term(b.clone(), Cyclotomic::one()).substitute_linear(&self.ysub[w]));
        self.yact_memo.lock().unwrap().insert(key, p.clone());
        p
    }

    /// `[y_j, x^a]`, by induction on `|a|` through `[y, x f] = [y, x] f + x [y, f]`.
    fn comm_y_xmono(&self, j: usize, a: &Monomial) -> Arc<XGroupTerms> {
        let key = (j, a.clone());
        if let Some(t) = self.comm_memo.lock().unwrap().get(&key) {
            return t.clone();
        }
        let mut acc: BTreeMap<(Monomial, usize), Cyclotomic> = BTreeMap::new();
        if let Some(i) = a.iter().position(|&e| e > 0) {
            let mut rest = a.clone();
            rest[i] -= 1;
            for (s, k) in &self.yx[j][i] {
                for (g, v) in self.act_x(*s, &rest).terms() {
                    add_to(&mut acc, (g.clone(), *s), k * v);
                }
            }
            for (g, s, v) in self.comm_y_xmono(j, &rest).iter() {
                let mut g = g.clone();
                g[i] += 1;
                add_to(&mut acc, (g, *s), v.clone());
            }
        }
        let terms: Arc<XGroupTerms> = Arc::new(
            acc.into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|((g, s), v)| (g, s, v))
                .collect(),
        );
        self.comm_memo.lock().unwrap().insert(key, terms.clone());
        terms
    }

    /// `y_j * e`.
    pub fn left_mul_y(&self, j: usize, e: &PbwElement) -> PbwElement {
        let n = self.nvars();
        let mut out = PbwElement::zero(n);
        let mut ej = vec![0; n];
        ej[j] = 1;
        for ((a, u, b), c) in &e.terms {
            // x^a y_j u y^b = x^a u (u^-1 . y_j) y^b
            let moved = self.act_y(self.group.inverse(*u), &ej);
            for (m, v) in moved.terms() {
                out.add_term((a.clone(), *u, mono_mul(m, b)), c * v);
            }
            // [y_j, x^a] u y^b
            for (g, s, v) in self.comm_y_xmono(j, a).iter() {
                out.add_term((g.clone(), self.group.mul(*s, *u), b.clone()), c * v);
            }
        }
        out
    }

    /// `w * e`.
    pub fn left_mul_w(&self, w: usize, e: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero(self.nvars());
        for ((a, u, b), c) in &e.terms {
            let wu = self.group.mul(w, *u);
            for (g, v) in self.act_x(w, a).terms() {
                out.add_term((g.clone(), wu, b.clone()), c * v);
            }
        }
        out
    }

    /// `x^a * e`.
    pub fn left_mul_x(&self, a: &Monomial, e: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero(self.nvars());
        for ((g, u, b), c) in &e.terms {
            out.add_term((mono_mul(a, g), *u, b.clone()), c.clone());
        }
        out
    }

    fn check_cap(&self, e: &PbwElement) -> Result<()> {
        let d = e.total_degree();
        if d > self.cap {
            return Err(Error::DegreeCapExceeded { degree: d, cap: self.cap });
        }
        Ok(())
    }

    pub fn multiply(&self, u: &PbwElement, v: &PbwElement) -> Result<PbwElement> {
        self.check_cap(u)?;
        self.check_cap(v)?;
        let mut out = PbwElement::zero(self.nvars());
        for ((a, w, b), c) in &u.terms {
            let mut e = v.clone();
            for (j, &k) in b.iter().enumerate() {
                for _ in 0..k {
                    e = self.left_mul_y(j, &e);
                }
            }
            e = self.left_mul_w(*w, &e);
            e = self.left_mul_x(a, &e);
            out.add_scaled(&e, c);
        }
        Ok(out)
    }

    pub fn commutator(&self, u: &PbwElement, v: &PbwElement) -> Result<PbwElement> {
        Ok(self.multiply(u, v)?.sub(&self.multiply(v, u)?))
    }

    /// Parse text such as `y1*x1^2 + 2*s12 - 1/2*x2`: variables are 1-based and
    /// any other non-numeric factor is a group element label.
    pub fn parse(&self, text: &str) -> Result<PbwElement> {
        let n = self.nvars();
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                if cur.ends_with('*') {
                    return Err(Error::Parse(format!("sign after '*' in '{}'", text)));
                }
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' {
                neg = !neg;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{}'", text)));
        }
        terms.push((neg, cur));
        let mut out = PbwElement::zero(n);
        for (neg, term) in terms {
            let mut prod = PbwElement::one(n);
            let mut coeff = if neg { -Cyclotomic::one() } else { Cyclotomic::one() };
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in '{}'", term)));
                }
                if let Some(el) = parse_variable(factor, n)? {
                    prod = self.multiply(&prod, &el)?;
                } else if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff = &coeff * &Cyclotomic::from(parse_rational(factor)?);
                } else {
                    let w = self
                        .group
                        .element_by_label(factor)
                        .ok_or_else(|| Error::Parse(format!("unknown factor '{}'", factor)))?;
                    prod = self.multiply(&prod, &PbwElement::group(n, w))?;
                }
            }
            out.add_scaled(&prod, &coeff);
        }
        Ok(out)
    }

    /// Random element with `nterms` terms of total degree at most `max_degree`
    /// and small integer coefficients.
    pub fn random_element<R: Rng>(&self, rng: &mut R, max_degree: u32, nterms: usize) -> PbwElement {
        let n = self.nvars();
        let mut out = PbwElement::zero(n);
        for _ in 0..nterms {
            let total = rng.gen_range(0..=max_degree);
            let mut a = vec![0u32; n];
            let mut b = vec![0u32; n];
            for _ in 0..total {
                let i = rng.gen_range(0..n);
                if rng.gen_bool(0.5) {
                    a[i] += 1;
                } else {
                    b[i] += 1;
                }
            }
            let w = rng.gen_range(0..self.group.order());
            let mut c = rng.gen_range(-5i64..=5);
            if c == 0 {
                c = 1;
            }
            out.add_term((a, w, b), Cyclotomic::from_int(c));
        }
        out
    }
}

/// The product in the skew group algebra `C[h (+) h*] x| W`, i.e. `H_0`
/// computed without any straightening.
pub fn skew_group_product(group: &ReflectionGroup, u: &PbwElement, v: &PbwElement) -> PbwElement {
    let mut out = PbwElement::zero(group.rank());
    for ((a, w, b), c) in u.terms() {
        for ((a2, w2, b2), c2) in v.terms() {
            let xs = Poly::term(a2.clone(), Cyclotomic::one()).substitute_linear(&group.x_substitution(*w));
            let ys = Poly::term(b.clone(), Cyclotomic::one())
                .substitute_linear(&group.y_substitution(group.inverse(*w2)));
            let ww = group.mul(*w, *w2);
            let cc = c * c2;
            for (g, gv) in xs.terms() {
                for (h, hv) in ys.terms() {
                    out.add_term((mono_mul(a, g), ww, mono_mul(h, b2)), &(&cc * gv) * hv);
                }
            }
        }
    }
    out
}

fn add_to<K: Ord>(acc: &mut BTreeMap<K, Cyclotomic>, k: K, v: Cyclotomic) {
    if v.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Cyclotomic::zero);
    *e += &v;
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn dot(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}
