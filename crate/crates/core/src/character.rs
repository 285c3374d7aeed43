//! Laurent polynomials and truncated Laurent series in `q` (and `q, t`).
//!
//! A series with truncation `T` knows its coefficients for exponents below
//! `T` only; every operation propagates the bound so that results never claim
//! more precision than their inputs carry.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Rational;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedCharacter {
    terms: BTreeMap<i64, Rational>,
    /// Coefficients are exact for exponents `< truncation`; `None` means exact polynomial.
    truncation: Option<i64>,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl GradedCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn monomial(exp: i64, coeff: Rational) -> Self {
        let mut g = Self::zero();
        g.add_term(exp, coeff);
        g
    }

    /// `sum coeffs[k] q^k` from integer coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut g = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            g.add_term(k as i64, Rational::from_integer(BigInt::from(c)));
        }
        g
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>, truncation: Option<i64>) -> Self {
        let mut g = GradedCharacter {
            terms: BTreeMap::new(),
            truncation,
        };
        for (e, c) in terms {
            g.add_term(e, c);
        }
        g.prune();
        g
    }

    /// Series of `1 / (1 - q^d)` to order `truncation`.
    pub fn geometric(d: i64, truncation: i64) -> Self {
        assert!(d > 0);
        let mut g = GradedCharacter {
            terms: BTreeMap::new(),
            truncation: Some(truncation),
        };
        let mut e = 0;
        while e < truncation {
            g.add_term(e, Rational::one());
            e += d;
        }
        g
    }

    /// `prod_i 1/(1 - q^{d_i})` to order `truncation`.
    pub fn inverse_product(degrees: &[u32], truncation: i64) -> Self {
        degrees.iter().fold(Self::one().truncated(truncation), |acc, &d| {
            acc.mul(&Self::geometric(d as i64, truncation))
        })
    }

    /// `prod_i (1 - q^{d_i})` as an exact polynomial.
    pub fn one_minus_product(degrees: &[u32]) -> Self {
        degrees.iter().fold(Self::one(), |acc, &d| {
            let mut f = Self::one();
            f.add_term(d as i64, -Rational::one());
            acc.mul(&f)
        })
    }

    pub fn add_term(&mut self, exp: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        if let Some(t) = self.truncation {
            if exp >= t {
                return;
            }
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn prune(&mut self) {
        if let Some(t) = self.truncation {
            self.terms.retain(|&e, _| e < t);
        }
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    pub fn is_polynomial(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Forget coefficients at exponents `>= t`.
    pub fn truncated(&self, t: i64) -> Self {
        let mut g = self.clone();
        g.truncation = min_opt(g.truncation, Some(t));
        g.prune();
        g
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut g = GradedCharacter {
            terms: self.terms.clone(),
            truncation: min_opt(self.truncation, other.truncation),
        };
        g.prune();
        for (e, c) in &other.terms {
            g.add_term(*e, c.clone());
        }
        g
    }

    pub fn neg(&self) -> Self {
        GradedCharacter {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
            truncation: self.truncation,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return GradedCharacter {
                terms: BTreeMap::new(),
                truncation: self.truncation,
            };
        }
        GradedCharacter {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
            truncation: self.truncation,
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        GradedCharacter {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
            truncation: self.truncation.map(|t| t + k),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Known range of a product: below T_a + low_b and T_b + low_a.
        let la = self.lowest_exponent();
        let lb = other.lowest_exponent();
        let truncation = match (la, lb) {
            (Some(la), Some(lb)) => min_opt(
                self.truncation.map(|t| t + lb),
                other.truncation.map(|t| t + la),
            ),
            _ => min_opt(self.truncation, other.truncation),
        };
        let mut g = GradedCharacter {
            terms: BTreeMap::new(),
            truncation,
        };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                g.add_term(e1 + e2, c1 * c2);
            }
        }
        g
    }

    /// Series inverse to order `truncation`; requires a nonzero lowest term.
    pub fn inverse(&self, truncation: i64) -> Option<Self> {
        let low = self.lowest_exponent()?;
        let lead = self.coefficient(low);
        let normalized = self.shift(-low).scale(&lead.recip());
        // normalized = 1 + h; invert by recursion on coefficients
        let t = truncation + low;
        let t = min_opt(Some(t), normalized.truncation).unwrap();
        let mut inv: Vec<Rational> = Vec::new();
        for k in 0..t.max(0) {
            let mut acc = if k == 0 { Rational::one() } else { Rational::zero() };
            for j in 1..=k {
                let h = normalized.coefficient(j);
                if !h.is_zero() {
                    acc -= &h * &inv[(k - j) as usize];
                }
            }
            inv.push(acc);
        }
        let series = GradedCharacter::from_terms(
            inv.into_iter().enumerate().map(|(k, c)| (k as i64, c)),
            Some(t),
        );
        Some(series.scale(&lead.recip()).shift(-low))
    }

    /// Value at `q = 1` of a polynomial.
    pub fn evaluate_at_one(&self) -> Option<Rational> {
        if !self.is_polynomial() {
            return None;
        }
        Some(self.terms.values().fold(Rational::zero(), |a, c| a + c))
    }

    /// Equality of the coefficients below `order`.
    pub fn agrees_to_order(&self, other: &Self, order: i64) -> bool {
        let known = |g: &Self| g.truncation.map(|t| t >= order).unwrap_or(true);
        known(self) && known(other) && self.truncated(order).terms == other.truncated(order).terms
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer coefficient vector `c_0..c_{len-1}`, when all apply.
    pub fn integer_coeffs(&self, len: usize) -> Option<Vec<i64>> {
        (0..len as i64)
            .map(|k| {
                let c = self.coefficient(k);
                if c.is_integer() {
                    c.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(c: &Rational, q: &str, first: bool) -> String {
    let neg = c.is_negative();
    let abs = c.abs();
    let body = match (q.is_empty(), abs.is_one()) {
        (true, _) => fmt_coeff(&abs),
        (false, true) => q.to_string(),
        (false, false) => format!("{}*{}", fmt_coeff(&abs), q),
    };
    match (first, neg) {
        (true, true) => format!("-{}", body),
        (true, false) => body,
        (false, true) => format!(" - {}", body),
        (false, false) => format!(" + {}", body),
    }
}

fn q_power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{}^{}", var, e),
    }
}

impl fmt::Display for GradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            write!(f, "{}", fmt_monomial(c, &q_power("q", *e), i == 0))?;
        }
        if let Some(t) = self.truncation {
            write!(f, " + O(q^{})", t)?;
        }
        Ok(())
    }
}

/// Series in `q` with polynomial dependence on `t`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BigradedCharacter {
    terms: BTreeMap<(i64, i64), Rational>,
    truncation: Option<i64>,
}

impl BigradedCharacter {
    /// `sum_k t^k * slices[k]`.
    pub fn from_slices(slices: &[GradedCharacter]) -> Self {
        let truncation = slices.iter().fold(None, |acc, s| min_opt(acc, s.truncation));
        let mut terms = BTreeMap::new();
        for (k, s) in slices.iter().enumerate() {
            for (e, c) in s.truncated(truncation.unwrap_or(i64::MAX)).terms() {
                terms.insert((*e, k as i64), c.clone());
            }
        }
        BigradedCharacter { terms, truncation }
    }

    pub fn truncation(&self) -> Option<i64> {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), Rational> {
        &self.terms
    }

    pub fn t_degree(&self) -> Option<i64> {
        self.terms.keys().map(|(_, t)| *t).max()
    }

    /// Forget coefficients at `q`-exponents `>= t`.
    pub fn truncated(&self, t: i64) -> Self {
        let truncation = min_opt(self.truncation, Some(t));
        let mut terms = self.terms.clone();
        if let Some(t) = truncation {
            terms.retain(|(e, _), _| *e < t);
        }
        BigradedCharacter { terms, truncation }
    }

    /// Coefficient of `t^k`.
    pub fn t_slice(&self, k: i64) -> GradedCharacter {
        GradedCharacter::from_terms(
            self.terms
                .iter()
                .filter(|((_, t), _)| *t == k)
                .map(|((e, _), c)| (*e, c.clone())),
            self.truncation,
        )
    }
}

impl fmt::Display for BigradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, ((e, t), c)) in self.terms.iter().enumerate() {
            let mono = [q_power("q", *e), q_power("t", *t)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            write!(f, "{}", fmt_monomial(c, &mono, i == 0))?;
        }
        if let Some(t) = self.truncation {
            write!(f, " + O(q^{})", t)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn geometric_products() {
        // 1/((1-q)^2 (1-q^3)) = 1 + 2q + 3q^2 + 5q^3 + 7q^4 + ...
        let s = GradedCharacter::inverse_product(&[1, 1, 3], 6);
        assert_eq!(s.integer_coeffs(6).unwrap(), vec![1, 2, 3, 5, 7, 9]);
        assert_eq!(s.truncation(), Some(6));
    }

    #[test]
    fn inverse_of_polynomial() {
        let p = GradedCharacter::one_minus_product(&[2, 3]);
        let inv = p.inverse(10).unwrap();
        assert!(inv.agrees_to_order(&GradedCharacter::inverse_product(&[2, 3], 10), 10));
        let prod = p.mul(&inv);
        assert!(prod.agrees_to_order(&GradedCharacter::one(), 10));
    }

    #[test]
    fn laurent_shift_truncation() {
        let s = GradedCharacter::geometric(2, 8).shift(-2);
        assert_eq!(s.lowest_exponent(), Some(-2));
        assert_eq!(s.truncation(), Some(6));
        assert_eq!(s.to_string(), "q^-2 + 1 + q^2 + q^4 + O(q^6)");
    }

    #[test]
    fn bigraded_slices() {
        let a = GradedCharacter::from_coeffs(&[1, 2]);
        let b = GradedCharacter::geometric(1, 4);
        let big = BigradedCharacter::from_slices(&[a.clone(), b.clone()]);
        assert_eq!(big.t_degree(), Some(1));
        assert_eq!(big.t_slice(0), a.truncated(4));
        assert_eq!(big.t_slice(1), b);
    }

    proptest! {
        #[test]
        fn series_inverse_roundtrip(cs in proptest::collection::vec(-5i64..=5, 1..6)) {
            let mut p = GradedCharacter::from_coeffs(&cs);
            p.add_term(0, Rational::one() - p.coefficient(0)); // constant term 1
            let inv = p.inverse(12).unwrap();
            prop_assert!(p.mul(&inv).agrees_to_order(&GradedCharacter::one(), 12));
        }

        #[test]
        fn multiplication_commutes(a in proptest::collection::vec(-5i64..=5, 0..6),
                                   b in proptest::collection::vec(-5i64..=5, 0..6)) {
            let x = GradedCharacter::from_coeffs(&a);
            let y = GradedCharacter::from_coeffs(&b).shift(-2);
            prop_assert_eq!(x.mul(&y), y.mul(&x));
        }
    }
}
