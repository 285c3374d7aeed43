//! Exact elements of cyclotomic fields `Q(zeta_N)`.
//!
//! An element is stored either as a plain rational or as a coefficient vector
//! in the power basis `1, z, ..., z^(phi(N)-1)` reduced modulo the cyclotomic
//! polynomial. Values that happen to be rational are always stored in the
//! rational variant, so the representation is canonical within one field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quo
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Integer coefficients (low to high) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let x_pow_minus_one = |d: u32| {
        let mut p = vec![BigInt::zero(); d as usize + 1];
        p[0] = BigInt::from(-1);
        p[d as usize] = BigInt::one();
        p
    };
    let mut num = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            num = poly_mul_int(&num, &x_pow_minus_one(d));
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            num = poly_div_monic(&num, &x_pow_minus_one(d));
        }
    }
    // The product formula yields (-1)^k times the monic polynomial for n = 1 only.
    if num.last().map(|c| c.is_negative()).unwrap_or(false) {
        num.iter_mut().for_each(|c| *c = -c.clone());
    }
    num
}

/// The field `Q(zeta_N)` with its reduction data.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    /// `z^k` in the power basis for every `k < N`.
    powers: Vec<Vec<Rational>>,
}

impl CyclotomicField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let phi_poly = cyclotomic_polynomial(conductor);
        let degree = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by z, then substitute z^degree = -sum phi_i z^i
            let top = cur[degree - 1].clone();
            let mut next = vec![Rational::zero(); degree];
            for i in 1..degree {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for i in 0..degree {
                    next[i] -= &top * Rational::from_integer(phi_poly[i].clone());
                }
            }
            cur = next;
        }
        Arc::new(CyclotomicField {
            conductor,
            degree,
            powers,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `phi(N)`, the dimension over the rationals.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Reduce a coefficient vector of arbitrary length (exponents taken
    /// modulo `N`) to canonical form.
    fn reduce(self: &Arc<Self>, coeffs: Vec<Rational>) -> Cyclotomic {
        let n = self.conductor as usize;
        let d = self.degree;
        let mut out = vec![Rational::zero(); d];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k % n;
            if k < d {
                out[k] += c;
            } else {
                for (o, p) in out.iter_mut().zip(&self.powers[k]) {
                    if !p.is_zero() {
                        *o += &c * p;
                    }
                }
            }
        }
        Cyclotomic::from_parts(self.clone(), out)
    }
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub enum Cyclotomic {
    Rat(Rational),
    /// Coefficients in the power basis of the field; never all-rational.
    Alg(Arc<CyclotomicField>, Vec<Rational>),
}

pub type CyclotomicNumber = Cyclotomic;

impl Cyclotomic {
    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic::Rat(r)
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::Rat(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Cyclotomic::Rat(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `zeta_N^k` in the given field.
    pub fn root_of_unity(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.conductor as i64;
        let e = k.rem_euclid(n) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        field.reduce(coeffs)
    }

    /// Build `sum coeffs[k] * zeta_N^k`; exponents may exceed `phi(N)`.
    pub fn from_power_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        field.reduce(coeffs)
    }

    fn from_parts(field: Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Cyclotomic::Rat(coeffs.into_iter().next().unwrap_or_else(Rational::zero))
        } else {
            Cyclotomic::Alg(field, coeffs)
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Cyclotomic::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Cyclotomic::Rat(r) => Some(r),
            Cyclotomic::Alg(..) => None,
        }
    }

    /// Conductor of the field this value is stored in (1 for rationals).
    pub fn conductor(&self) -> u32 {
        match self {
            Cyclotomic::Rat(_) => 1,
            Cyclotomic::Alg(f, _) => f.conductor,
        }
    }

    /// Power-basis coefficients relative to `field`.
    pub fn coefficients_in(&self, field: &Arc<CyclotomicField>) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); field.degree];
        match self.lift_to(field) {
            Cyclotomic::Rat(r) => out[0] = r,
            Cyclotomic::Alg(_, c) => out = c,
        }
        out
    }

    /// Re-express in a field containing this one.
    pub fn lift_to(&self, field: &Arc<CyclotomicField>) -> Cyclotomic {
        match self {
            Cyclotomic::Rat(r) => Cyclotomic::Rat(r.clone()),
            Cyclotomic::Alg(f, c) => {
                if Arc::ptr_eq(f, field) || f.conductor == field.conductor {
                    return Cyclotomic::Alg(field.clone(), c.clone());
                }
                assert!(
                    field.conductor.is_multiple_of(f.conductor),
                    "cannot embed Q(zeta_{}) into Q(zeta_{})",
                    f.conductor,
                    field.conductor
                );
                let step = (field.conductor / f.conductor) as usize;
                let mut coeffs = vec![Rational::zero(); step * c.len()];
                for (k, v) in c.iter().enumerate() {
                    coeffs[k * step] = v.clone();
                }
                field.reduce(coeffs)
            }
        }
    }

    fn common_field(a: &Arc<CyclotomicField>, b: &Arc<CyclotomicField>) -> Arc<CyclotomicField> {
        if Arc::ptr_eq(a, b) || a.conductor == b.conductor {
            a.clone()
        } else {
            let l = a.conductor.lcm(&b.conductor);
            if l == a.conductor {
                a.clone()
            } else if l == b.conductor {
                b.clone()
            } else {
                CyclotomicField::new(l)
            }
        }
    }

    pub fn inv(&self) -> Option<Cyclotomic> {
        match self {
            Cyclotomic::Rat(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Cyclotomic::Rat(r.recip()))
                }
            }
            Cyclotomic::Alg(f, _) => {
                // Solve (self * v = 1) via the multiplication matrix over Q.
                let d = f.degree;
                let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
                for k in 0..d {
                    let zk = Cyclotomic::root_of_unity(f, k as i64);
                    cols.push((self * &zk).coefficients_in(f));
                }
                let mut aug: Vec<Vec<Rational>> = (0..d)
                    .map(|i| {
                        let mut row: Vec<Rational> = (0..d).map(|j| cols[j][i].clone()).collect();
                        row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                        row
                    })
                    .collect();
                let sol = solve_rational_square(&mut aug)?;
                Some(f.reduce(sol))
            }
        }
    }

    /// Image under `zeta -> zeta^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        match self {
            Cyclotomic::Rat(r) => Cyclotomic::Rat(r.clone()),
            Cyclotomic::Alg(f, c) => {
                let n = f.conductor as i64;
                let mut coeffs = vec![Rational::zero(); n as usize];
                for (e, v) in c.iter().enumerate() {
                    let t = ((e as i64) * k).rem_euclid(n) as usize;
                    coeffs[t] += v;
                }
                f.reduce(coeffs)
            }
        }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    pub fn pow(&self, e: u32) -> Cyclotomic {
        let mut acc = Cyclotomic::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Cyclotomic literal: `[k, num, den]` triples meaning `sum (num/den) zeta_N^k`.
    pub fn to_literal(&self, conductor: u32) -> Vec<(u32, BigInt, BigInt)> {
        let coeffs = match self {
            Cyclotomic::Rat(r) => vec![r.clone()],
            Cyclotomic::Alg(f, c) => {
                assert!(conductor.is_multiple_of(f.conductor), "literal conductor too small");
                let step = conductor / f.conductor;
                let mut out = vec![Rational::zero(); (conductor as usize).max(1)];
                for (k, v) in c.iter().enumerate() {
                    out[k * step as usize] = v.clone();
                }
                out
            }
        };
        coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u32, c.numer().clone(), c.denom().clone()))
            .collect()
    }

    pub fn from_literal(field: &Arc<CyclotomicField>, terms: &[(i64, BigInt, BigInt)]) -> Option<Self> {
        let n = field.conductor as i64;
        let mut coeffs = vec![Rational::zero(); n as usize];
        for (k, num, den) in terms {
            if den.is_zero() {
                return None;
            }
            coeffs[k.rem_euclid(n) as usize] += Rational::new(num.clone(), den.clone());
        }
        Some(field.reduce(coeffs))
    }
}

fn solve_rational_square(aug: &mut [Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = aug.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for j in col..=n {
            aug[col][j] = &aug[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in col..=n {
                    let t = &f * &aug[col][j];
                    aug[r][j] -= t;
                }
            }
        }
    }
    Some(aug.iter().map(|row| row[n].clone()).collect())
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::Rat(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            Cyclotomic::Rat(r) => r.is_zero(),
            Cyclotomic::Alg(..) => false,
        }
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::Rat(Rational::one())
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::Rat(r)
    }
}

fn add_impl(a: &Cyclotomic, b: &Cyclotomic, negate_b: bool) -> Cyclotomic {
    use Cyclotomic::*;
    match (a, b) {
        (Rat(x), Rat(y)) => Rat(if negate_b { x - y } else { x + y }),
        (Alg(f, c), Rat(y)) => {
            let mut c = c.clone();
            if negate_b {
                c[0] -= y;
            } else {
                c[0] += y;
            }
            Cyclotomic::from_parts(f.clone(), c)
        }
        (Rat(x), Alg(f, c)) => {
            let mut c: Vec<Rational> = if negate_b {
                c.iter().map(|v| -v).collect()
            } else {
                c.clone()
            };
            c[0] += x;
            Cyclotomic::from_parts(f.clone(), c)
        }
        (Alg(f, c), Alg(g, d)) => {
            if Arc::ptr_eq(f, g) || f.conductor == g.conductor {
                let out: Vec<Rational> = c
                    .iter()
                    .zip(d)
                    .map(|(x, y)| if negate_b { x - y } else { x + y })
                    .collect();
                Cyclotomic::from_parts(f.clone(), out)
            } else {
                let h = Cyclotomic::common_field(f, g);
                add_impl(&a.lift_to(&h), &b.lift_to(&h), negate_b)
            }
        }
    }
}

fn mul_impl(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    use Cyclotomic::*;
    match (a, b) {
        (Rat(x), Rat(y)) => Rat(x * y),
        (Alg(f, c), Rat(y)) | (Rat(y), Alg(f, c)) => {
            if y.is_zero() {
                return Cyclotomic::zero();
            }
            Alg(f.clone(), c.iter().map(|v| v * y).collect())
        }
        (Alg(f, c), Alg(g, d)) => {
            if Arc::ptr_eq(f, g) || f.conductor == g.conductor {
                let mut prod = vec![Rational::zero(); c.len() + d.len() - 1];
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in d.iter().enumerate() {
                        if !y.is_zero() {
                            prod[i + j] += x * y;
                        }
                    }
                }
                f.reduce(prod)
            } else {
                let h = Cyclotomic::common_field(f, g);
                mul_impl(&a.lift_to(&h), &b.lift_to(&h))
            }
        }
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        add_impl(self, rhs, false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        add_impl(self, rhs, true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        mul_impl(self, rhs)
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let inv = rhs.inv().expect("division by zero");
        mul_impl(self, &inv)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        match self {
            Cyclotomic::Rat(r) => Cyclotomic::Rat(-r),
            Cyclotomic::Alg(f, c) => Cyclotomic::Alg(f.clone(), c.iter().map(|v| -v).collect()),
        }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if let (Cyclotomic::Rat(x), Cyclotomic::Rat(y)) = (&mut *self, rhs) {
            *x += y;
            return;
        }
        *self = add_impl(self, rhs, false);
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if let (Cyclotomic::Rat(x), Cyclotomic::Rat(y)) = (&mut *self, rhs) {
            *x -= y;
            return;
        }
        *self = add_impl(self, rhs, true);
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = mul_impl(self, rhs);
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        use Cyclotomic::*;
        match (self, other) {
            (Rat(x), Rat(y)) => x == y,
            (Alg(f, c), Alg(g, d)) => {
                if f.conductor == g.conductor {
                    c == d
                } else {
                    (self - other).is_zero()
                }
            }
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Cyclotomic::Rat(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            Cyclotomic::Alg(f, c) => {
                1u8.hash(state);
                f.conductor.hash(state);
                c.hash(state);
            }
        }
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order used only for canonical keys; it has no arithmetic meaning.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        use Cyclotomic::*;
        match (self, other) {
            (Rat(x), Rat(y)) => x.cmp(y),
            (Rat(_), Alg(..)) => Ordering::Less,
            (Alg(..), Rat(_)) => Ordering::Greater,
            (Alg(f, c), Alg(g, d)) => f.conductor.cmp(&g.conductor).then_with(|| c.cmp(d)),
        }
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cyclotomic::Rat(r) => write!(f, "{}", fmt_rational(r)),
            Cyclotomic::Alg(field, c) => {
                let mut parts = Vec::new();
                for (k, v) in c.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let term = match k {
                        0 => fmt_rational(v),
                        _ => {
                            let z = if k == 1 {
                                format!("z{}", field.conductor)
                            } else {
                                format!("z{}^{}", field.conductor, k)
                            };
                            if v.is_one() {
                                z
                            } else if (-v).is_one() {
                                format!("-{}", z)
                            } else {
                                format!("{}*{}", fmt_rational(v), z)
                            }
                        }
                    };
                    parts.push(term);
                }
                let mut s = String::new();
                for (i, p) in parts.iter().enumerate() {
                    if i == 0 {
                        s.push_str(p);
                    } else if let Some(rest) = p.strip_prefix('-') {
                        s.push_str(" - ");
                        s.push_str(rest);
                    } else {
                        s.push_str(" + ");
                        s.push_str(p);
                    }
                }
                write!(f, "({})", s)
            }
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rational to `i64` when it is an integer that fits.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn element(n: u32) -> impl Strategy<Value = Cyclotomic> {
        let field = CyclotomicField::new(n);
        proptest::collection::vec((-20i64..=20, 1i64..=6), n as usize).prop_map(move |cs| {
            let coeffs = cs.into_iter().map(|(a, b)| Rational::new(a.into(), b.into())).collect();
            Cyclotomic::from_power_coeffs(&field, coeffs)
        })
    }

    proptest! {
        #[test]
        fn field_axioms_q_zeta_5(a in element(5), b in element(5), c in element(5)) {
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Cyclotomic::one());
            }
        }

        #[test]
        fn field_axioms_q_zeta_12(a in element(12), b in element(12)) {
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        let as_i64 = |n| {
            cyclotomic_polynomial(n)
                .into_iter()
                .map(|c| c.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_power_n_is_one() {
        for n in [3u32, 4, 5, 6, 7, 8, 9, 12] {
            let f = CyclotomicField::new(n);
            let z = Cyclotomic::root_of_unity(&f, 1);
            assert_eq!(z.pow(n), Cyclotomic::one(), "n = {n}");
            for k in 1..n {
                if k.gcd(&n) == 1 {
                    assert_ne!(z.pow(k), Cyclotomic::one());
                }
            }
            // Phi_N(zeta) = 0
            let phi = cyclotomic_polynomial(n);
            let mut acc = Cyclotomic::zero();
            for (k, c) in phi.iter().enumerate() {
                acc += &(Cyclotomic::Rat(Rational::from_integer(c.clone())) * z.pow(k as u32));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn inverse_and_mixed_fields() {
        let f = CyclotomicField::new(5);
        let a = Cyclotomic::root_of_unity(&f, 1) + Cyclotomic::from_int(2);
        let b = a.inv().unwrap();
        assert_eq!(&a * &b, Cyclotomic::one());
        let g = CyclotomicField::new(3);
        let w = Cyclotomic::root_of_unity(&g, 1);
        let h = CyclotomicField::new(6);
        let w6 = Cyclotomic::root_of_unity(&h, 2);
        assert_eq!(w, w6);
        assert!(Cyclotomic::zero().inv().is_none());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f = CyclotomicField::new(4);
        let i = Cyclotomic::root_of_unity(&f, 1);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
        assert!((&i * &i).is_rational());
        assert_eq!(i.conj(), -&i);
    }

    #[test]
    fn literal_roundtrip() {
        let f = CyclotomicField::new(7);
        let a = Cyclotomic::root_of_unity(&f, 3) * Cyclotomic::from_frac(2, 3) + Cyclotomic::from_int(1);
        let lit = a.to_literal(7);
        let terms: Vec<(i64, BigInt, BigInt)> =
            lit.into_iter().map(|(k, n, d)| (k as i64, n, d)).collect();
        assert_eq!(Cyclotomic::from_literal(&f, &terms).unwrap(), a);
    }
}
