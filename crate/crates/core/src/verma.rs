//! Closed character formulas: endomorphism rings of baby Vermas, their
//! generator degrees, bigraded Tor/Ext, and characters of full Vermas.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::Rational;
use crate::character::{BigradedCharacter, GradedCharacter};
use crate::error::{Error, Result};
use crate::groups::symmetric::{hook_lengths, parse_partition, partition_label};
use crate::groups::{b_invariant, GroupSpec, ReflectionGroup, SnRep};

pub const DEFAULT_TRUNCATION: i64 = 24;

/// Orientation used for the generator degrees `e_i`.
pub const EIS_READING: &str =
    "reading A: prod 1/(1-q^e_i) = ch_q(E); agrees with the d_i-placed form only when f is a monomial";

/// `q^{-b} f(q) prod 1/(1-q^{d_i})` for an explicit fake polynomial.
pub fn endo_character_from(
    b: i64,
    f: &GradedCharacter,
    degrees: &[u32],
    truncation: i64,
) -> Result<GradedCharacter> {
    let head = f.shift(-b);
    if let Some(low) = head.lowest_exponent() {
        if low < 0 {
            return Err(Error::NegativeExponentPresent(low));
        }
    }
    Ok(head
        .mul(&GradedCharacter::inverse_product(degrees, truncation))
        .truncated(truncation))
}

/// `ch_q(E_Omega)` for the block whose distinguished member is `label`.
pub fn endo_character(group: &ReflectionGroup, label: &str, truncation: i64) -> Result<GradedCharacter> {
    let dual = group.dual_rep(group.irrep(label)?)?;
    let f = group.fake_polynomial(dual);
    let b = b_invariant(&f)?;
    endo_character_from(b, &f, group.degrees(), truncation)
}

/// `1 / prod_{cells} (1 - q^{hook})`.
pub fn hook_series(partition: &[usize], truncation: i64) -> GradedCharacter {
    GradedCharacter::inverse_product(&hook_lengths(partition), truncation)
}

/// The endomorphism character of `S_n` (permutation representation, generic
/// `c`) against the inverse hook polynomial.
pub fn hook_identity_check(n: usize, partition: &[usize], truncation: i64) -> Result<bool> {
    if partition.iter().sum::<usize>() != n {
        return Ok(false);
    }
    let group = ReflectionGroup::build(&GroupSpec::Symmetric(n, SnRep::Permutation))?;
    let endo = endo_character(&group, &partition_label(partition), truncation)?;
    Ok(endo.agrees_to_order(&hook_series(partition, truncation), truncation))
}

/// Convenience form taking a partition label such as `(2,1)`.
pub fn hook_identity_check_label(n: usize, label: &str, truncation: i64) -> Result<bool> {
    let p = parse_partition(label).ok_or_else(|| Error::Parse(format!("partition {}", label)))?;
    hook_identity_check(n, &p, truncation)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EisFactorization {
    Solved(Vec<u32>),
    NoSolution,
}

impl EisFactorization {
    pub fn degrees(&self) -> Option<&[u32]> {
        match self {
            EisFactorization::Solved(e) => Some(e),
            EisFactorization::NoSolution => None,
        }
    }
}

impl fmt::Display for EisFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EisFactorization::Solved(e) => {
                let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            EisFactorization::NoSolution => write!(f, "no solution"),
        }
    }
}

/// Peel `n` factors `1/(1-q^e)` off a series with constant term 1, lowest
/// first; the remainder must be exactly 1 to the truncation order.
pub fn solve_eis_series(series: &GradedCharacter, n: usize) -> EisFactorization {
    let Some(order) = series.truncation() else {
        return peel(series, n, None);
    };
    peel(series, n, Some(order))
}

fn peel(series: &GradedCharacter, n: usize, order: Option<i64>) -> EisFactorization {
    if series.lowest_exponent() != Some(0) || !series.coefficient(0).is_one() {
        return EisFactorization::NoSolution;
    }
    let mut rest = series.clone();
    let mut found = Vec::new();
    for _ in 0..n {
        let Some(e) = rest.terms().keys().copied().find(|&e| e != 0) else {
            return EisFactorization::NoSolution;
        };
        let c = rest.coefficient(e);
        // a factor 1/(1-q^e) contributes +q^e at the lowest nonconstant degree
        if e <= 0 || !c.is_integer() || !c.is_positive() {
            return EisFactorization::NoSolution;
        }
        let mut factor = GradedCharacter::one();
        factor.add_term(e, -Rational::one());
        rest = rest.mul(&factor);
        if let Some(t) = order {
            rest = rest.truncated(t);
        }
        found.push(e as u32);
    }
    let one = GradedCharacter::one();
    let done = match order {
        Some(t) => rest.agrees_to_order(&one, t),
        None => rest == one,
    };
    if done {
        found.sort_unstable();
        EisFactorization::Solved(found)
    } else {
        EisFactorization::NoSolution
    }
}

#[derive(Clone, Debug)]
pub struct EisReport {
    pub label: String,
    pub endo: GradedCharacter,
    pub factorization: EisFactorization,
    pub reading: &'static str,
}

pub fn solve_eis(group: &ReflectionGroup, label: &str, truncation: i64) -> Result<EisReport> {
    let endo = endo_character(group, label, truncation)?;
    let factorization = solve_eis_series(&endo, group.rank());
    Ok(EisReport {
        label: label.to_string(),
        endo,
        factorization,
        reading: EIS_READING,
    })
}

/// `sum_k t^k e_k(q^{sign e_1}, ..., q^{sign e_n}) * base`.
fn exterior_twist(base: &GradedCharacter, eis: &[u32], sign: i64) -> BigradedCharacter {
    // elementary symmetric polynomials in q^{sign e_i}, as polynomials in q
    let mut elem: Vec<GradedCharacter> = vec![GradedCharacter::one()];
    for &e in eis {
        let mono = GradedCharacter::monomial(sign * e as i64, Rational::one());
        let mut next = elem.clone();
        next.push(GradedCharacter::zero());
        for k in 0..elem.len() {
            next[k + 1] = next[k + 1].add(&elem[k].mul(&mono));
        }
        elem = next;
    }
    let slices: Vec<GradedCharacter> = elem.iter().map(|p| p.mul(base)).collect();
    BigradedCharacter::from_slices(&slices)
}

fn twisted(group: &ReflectionGroup, label: &str, eis: &EisFactorization, truncation: i64, sign: i64) -> Result<BigradedCharacter> {
    let e = eis.degrees().ok_or(Error::MissingEis)?;
    if e.len() != group.rank() {
        return Err(Error::MissingEis);
    }
    // negative shifts lose precision; widen the base so the result is known below `truncation`
    let widen: i64 = if sign < 0 { e.iter().map(|&x| x as i64).sum() } else { 0 };
    let endo = endo_character(group, label, truncation + widen)?;
    Ok(exterior_twist(&endo, e, sign).truncated(truncation))
}

/// `q^{-b} f prod (1 + t q^{-e_i}) / (1 - q^{d_i})`.
pub fn tor_character(group: &ReflectionGroup, label: &str, eis: &EisFactorization, truncation: i64) -> Result<BigradedCharacter> {
    twisted(group, label, eis, truncation, -1)
}

/// `q^{-b} f prod (1 + t q^{e_i}) / (1 - q^{d_i})`.
pub fn ext_character(group: &ReflectionGroup, label: &str, eis: &EisFactorization, truncation: i64) -> Result<BigradedCharacter> {
    twisted(group, label, eis, truncation, 1)
}

/// Character of `C[h] (x) lambda`: `dim lambda / (1-q)^n`.
pub fn verma_character(group: &ReflectionGroup, label: &str, truncation: i64) -> Result<GradedCharacter> {
    let dim = group.irrep(label)?.dim;
    let ones = vec![1u32; group.rank()];
    Ok(GradedCharacter::inverse_product(&ones, truncation)
        .scale(&Rational::from_integer(BigInt::from(dim))))
}

/// Graded character of the baby Verma `Delta(0, lambda)`: the coinvariants times `dim lambda`.
pub fn baby_verma_character(group: &ReflectionGroup, label: &str) -> Result<GradedCharacter> {
    let dim = group.irrep(label)?.dim;
    let ones = vec![1u32; group.rank()];
    let num = GradedCharacter::one_minus_product(group.degrees());
    let den = GradedCharacter::one_minus_product(&ones);
    // exact division of polynomials, done as a series long enough to terminate
    let top: i64 = group.degrees().iter().map(|&d| d as i64 - 1).sum();
    let q = num.mul(&den.inverse(top + 1).expect("constant term 1"));
    Ok(GradedCharacter::from_terms(q.terms().clone(), None).scale(&Rational::from_integer(BigInt::from(dim))))
}

/// Homological degrees in which Tor and Ext of a dual Verma pair are one-dimensional.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualPairing {
    pub tor_degree: usize,
    pub ext_degree: usize,
}

pub fn dual_verma_pairing_expected(n: usize) -> DualPairing {
    DualPairing {
        tor_degree: 0,
        ext_degree: n,
    }
}

#[derive(Clone, Debug)]
pub struct RankReport {
    /// `verma_character / endo_character`, as computed to the truncation order.
    pub quotient: GradedCharacter,
    pub terminates: bool,
    pub nonnegative: bool,
    pub value_at_one: Option<Rational>,
    pub ok: bool,
}

/// The Verma character divided by the endomorphism character should be a
/// polynomial with nonnegative coefficients summing to `|W|`. Termination is
/// required well inside the truncation window.
pub fn rank_check(group: &ReflectionGroup, label: &str, truncation: i64) -> Result<RankReport> {
    let verma = verma_character(group, label, truncation)?;
    let endo = endo_character(group, label, truncation)?;
    let inv = endo.inverse(truncation).ok_or(Error::ZeroPolynomial)?;
    let quotient = verma.mul(&inv).truncated(truncation);
    let terminates = quotient
        .highest_exponent()
        .map(|h| 2 * h < truncation)
        .unwrap_or(true);
    let nonnegative = quotient.has_nonnegative_coefficients() && quotient.has_integer_coefficients();
    let value_at_one = terminates
        .then(|| GradedCharacter::from_terms(quotient.terms().clone(), None).evaluate_at_one())
        .flatten();
    let order = Rational::from_integer(BigInt::from(group.order()));
    let ok = terminates && nonnegative && value_at_one.as_ref() == Some(&order);
    Ok(RankReport {
        quotient,
        terminates,
        nonnegative,
        value_at_one,
        ok,
    })
}
