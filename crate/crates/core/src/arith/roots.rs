//! Roots in `Q(zeta_N)` of a polynomial with coefficients in that field.
//!
//! We work p-adically with a prime `p = 1 mod N`, where the field splits
//! completely: each embedding `zeta -> omega^j` gives a polynomial over the
//! p-adic integers whose simple roots we find mod p and Hensel-lift. A tuple
//! of lifted roots, one per embedding, determines power-basis coordinates
//! through a Vandermonde solve; rational reconstruction and an exact check
//! then confirm or reject it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Cyclotomic, CyclotomicField, Rational};

/// Upper bound on tuples examined per root candidate.
const MAX_TUPLES: usize = 2_000_000;
const MAX_PRECISION: u32 = 256;

fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

fn rational_mod(r: &Rational, m: &BigInt) -> Option<BigInt> {
    let d = mod_inv(r.denom(), m)?;
    Some(modp(&(r.numer() * d), m))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod_u64(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// A primitive `n`-th root of unity modulo the prime `p` (requires `n | p - 1`).
fn primitive_root_of_unity(n: u64, p: u64) -> u64 {
    let qs = prime_factors(n);
    for g in 2..p {
        let w = pow_mod_u64(g, (p - 1) / n, p);
        if qs.iter().all(|q| pow_mod_u64(w, n / q, p) != 1) {
            return w;
        }
    }
    1
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = modp(&(acc * x + c), m);
    }
    acc
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Newton lift of a simple root modulo `p` to modulo `target`.
fn hensel_lift(coeffs: &[BigInt], root: u64, p: &BigInt, target: &BigInt) -> BigInt {
    let deriv = derivative(coeffs);
    let mut r = BigInt::from(root);
    let mut m = p.clone();
    while &m < target {
        m = (&m * &m).min(target.clone());
        let fr = eval_mod(coeffs, &r, &m);
        let dr = eval_mod(&deriv, &r, &m);
        let inv = mod_inv(&dr, &m).expect("simple root");
        r = modp(&(r - fr * inv), &m);
    }
    r
}

/// Smallest fraction congruent to `u` modulo `m` with both parts below `bound`.
fn rational_reconstruct(u: &BigInt, m: &BigInt, bound: &BigInt) -> Option<Rational> {
    let (mut r0, mut r1) = (m.clone(), modp(u, m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Inverse modulo `m` of a matrix whose reduction mod p is invertible.
fn invert_mod(mat: &[Vec<BigInt>], m: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let n = mat.len();
    let mut a: Vec<Vec<BigInt>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigInt> = row.iter().map(|v| modp(v, m)).collect();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| mod_inv(&a[r][c], m).is_some())?;
        a.swap(c, piv);
        let inv = mod_inv(&a[c][c], m)?;
        for j in 0..2 * n {
            a[c][j] = modp(&(&a[c][j] * &inv), m);
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[r][j] = modp(&(&a[r][j] - t), m);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

struct Embeddings {
    /// Exponents `j` coprime to `N`, one per embedding.
    exps: Vec<u64>,
    /// Lifted root of `Phi_N` modulo `p^M`.
    omega: BigInt,
    modulus: BigInt,
}

impl Embeddings {
    fn new(field: &CyclotomicField, p: u64, precision: u32) -> Self {
        let n = field.conductor() as u64;
        let exps: Vec<u64> = (1..=n.max(1)).filter(|j| j.gcd(&n) == 1).collect();
        let pb = BigInt::from(p);
        let modulus = pb.pow(precision);
        let phi = super::cyclotomic::cyclotomic_polynomial(field.conductor());
        let w0 = primitive_root_of_unity(n, p);
        let omega = if n == 1 {
            BigInt::one()
        } else {
            hensel_lift(&phi, w0, &pb, &modulus)
        };
        Embeddings {
            exps,
            omega,
            modulus,
        }
    }

    fn image(&self, coeffs: &[Rational], j: u64) -> Option<BigInt> {
        let m = &self.modulus;
        let w = self.omega.modpow(&BigInt::from(j), m);
        let mut acc = BigInt::zero();
        let mut pw = BigInt::one();
        for c in coeffs {
            if !c.is_zero() {
                acc += rational_mod(c, m)? * &pw;
            }
            pw = modp(&(pw * &w), m);
        }
        Some(modp(&acc, m))
    }
}

fn roots_mod_p(coeffs: &[u64], p: u64) -> Vec<u64> {
    let pp = p as u128;
    (0..p)
        .filter(|&x| {
            let mut acc = 0u128;
            for &c in coeffs.iter().rev() {
                acc = (acc * x as u128 + c as u128) % pp;
            }
            acc == 0
        })
        .collect()
}

/// All roots in `field` of `sum coeffs[i] t^i`. The polynomial should be
/// squarefree; roots are returned without multiplicity, sorted canonically.
pub fn roots_in_field(coeffs: &[Cyclotomic], field: &Arc<CyclotomicField>) -> Vec<Cyclotomic> {
    let mut coeffs: Vec<Cyclotomic> = coeffs.to_vec();
    while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-(&coeffs[0] / &coeffs[1])];
    }
    // Normalize to monic so that leading-coefficient issues disappear mod p.
    let lead = coeffs[deg].clone();
    let coeffs: Vec<Cyclotomic> = coeffs.iter().map(|c| c / &lead).collect();
    let field_coeffs: Vec<Vec<Rational>> = coeffs.iter().map(|c| c.coefficients_in(field)).collect();
    let n = field.conductor() as u64;
    let den_lcm = field_coeffs
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));

    let mut p = 10_007u64;
    let mut best: Vec<Cyclotomic> = Vec::new();
    for _attempt in 0..3 {
        // next prime = 1 mod N not dividing any denominator, with all roots simple
        let (prime, per_embedding) = loop {
            while !(is_prime(p) && (p - 1).is_multiple_of(n) && !(&den_lcm % p).is_zero()) {
                p += 1;
            }
            let emb = Embeddings::new(field, p, 1);
            let pb = BigInt::from(p);
            let mut ok = true;
            let mut per = Vec::new();
            for &j in &emb.exps {
                let img: Vec<BigInt> = field_coeffs
                    .iter()
                    .map(|c| emb.image(c, j).expect("denominator coprime to p"))
                    .collect();
                let small: Vec<u64> = img.iter().map(|v| modp(v, &pb).to_u64().unwrap()).collect();
                let rs = roots_mod_p(&small, p);
                let d = derivative(&img);
                if rs
                    .iter()
                    .any(|&r| eval_mod(&d, &BigInt::from(r), &pb).is_zero())
                {
                    ok = false;
                    break;
                }
                per.push(rs);
            }
            let candidate = p;
            p += 1;
            if ok {
                break (candidate, per);
            }
        };
        let upper = per_embedding.iter().map(|r| r.len()).min().unwrap_or(0);
        if upper == 0 {
            return Vec::new();
        }
        let mut precision = 8;
        while precision <= MAX_PRECISION {
            let found = match_roots(&coeffs, &field_coeffs, field, prime, precision, &per_embedding);
            if found.len() > best.len() {
                best = found;
            }
            if best.len() == upper {
                best.sort();
                return best;
            }
            precision *= 2;
        }
    }
    best.sort();
    best
}

fn match_roots(
    coeffs: &[Cyclotomic],
    field_coeffs: &[Vec<Rational>],
    field: &Arc<CyclotomicField>,
    p: u64,
    precision: u32,
    per_embedding: &[Vec<u64>],
) -> Vec<Cyclotomic> {
    let emb = Embeddings::new(field, p, precision);
    let m = emb.modulus.clone();
    let pb = BigInt::from(p);
    let lifted: Vec<Vec<BigInt>> = emb
        .exps
        .iter()
        .zip(per_embedding)
        .map(|(&j, rs)| {
            let img: Vec<BigInt> = field_coeffs
                .iter()
                .map(|c| emb.image(c, j).expect("denominator coprime to p"))
                .collect();
            rs.iter().map(|&r| hensel_lift(&img, r, &pb, &m)).collect()
        })
        .collect();
    let phi = field.degree();
    // V[j][k] = omega^(exp_j * k)
    let vander: Vec<Vec<BigInt>> = emb
        .exps
        .iter()
        .map(|&j| {
            let w = emb.omega.modpow(&BigInt::from(j), &m);
            let mut row = Vec::with_capacity(phi);
            let mut pw = BigInt::one();
            for _ in 0..phi {
                row.push(pw.clone());
                pw = modp(&(pw * &w), &m);
            }
            row
        })
        .collect();
    let Some(vinv) = invert_mod(&vander, &m) else {
        return Vec::new();
    };
    let bound = (m.sqrt() / BigInt::from(2)) >> 10usize;
    let bound = if bound < BigInt::one() { BigInt::one() } else { bound };

    let mut found = Vec::new();
    let counts: Vec<usize> = lifted.iter().map(|v| v.len()).collect();
    let total: usize = counts[1..].iter().product();
    if total > MAX_TUPLES {
        return found;
    }
    for first in &lifted[0] {
        let mut idx = vec![0usize; phi];
        'tuples: loop {
            let tuple: Vec<&BigInt> = std::iter::once(first)
                .chain((1..phi).map(|e| &lifted[e][idx[e]]))
                .collect();
            let mut coords = Vec::with_capacity(phi);
            let mut ok = true;
            for row in &vinv {
                let mut acc = BigInt::zero();
                for (a, b) in row.iter().zip(&tuple) {
                    acc += a * *b;
                }
                match rational_reconstruct(&modp(&acc, &m), &m, &bound) {
                    Some(r) => coords.push(r),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let alpha = Cyclotomic::from_power_coeffs(field, coords);
                let mut val = Cyclotomic::zero();
                for c in coeffs.iter().rev() {
                    val = &(&val * &alpha) + c;
                }
                if val.is_zero() {
                    found.push(alpha);
                    break 'tuples;
                }
            }
            // advance odometer over embeddings 1..phi
            let mut e = 1;
            loop {
                if e >= phi {
                    break 'tuples;
                }
                idx[e] += 1;
                if idx[e] < counts[e] {
                    break;
                }
                idx[e] = 0;
                e += 1;
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_from_roots(roots: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut p = vec![Cyclotomic::one()];
        for r in roots {
            let mut next = vec![Cyclotomic::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &(c * r);
            }
            p = next;
        }
        p
    }

    #[test]
    fn rational_roots() {
        let f = CyclotomicField::new(1);
        let roots: Vec<Cyclotomic> = [3, -7, 0]
            .iter()
            .map(|&v| Cyclotomic::from_int(v))
            .chain([Cyclotomic::from_frac(5, 12)])
            .collect();
        let mut got = roots_in_field(&poly_from_roots(&roots), &f);
        let mut want = roots.clone();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn roots_of_unity_split_cyclotomic() {
        for n in [3u32, 4, 5, 8] {
            let f = CyclotomicField::new(n);
            let roots: Vec<Cyclotomic> = (0..n as i64).map(|k| Cyclotomic::root_of_unity(&f, k)).collect();
            // t^n - 1
            let mut poly = vec![Cyclotomic::zero(); n as usize + 1];
            poly[0] = Cyclotomic::from_int(-1);
            poly[n as usize] = Cyclotomic::one();
            let mut got = roots_in_field(&poly, &f);
            let mut want = roots;
            got.sort();
            want.sort();
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn mixed_algebraic_roots() {
        let f = CyclotomicField::new(5);
        let z = Cyclotomic::root_of_unity(&f, 1);
        let roots = vec![
            &z * &Cyclotomic::from_frac(3, 7) + Cyclotomic::from_int(2),
            z.pow(3) - Cyclotomic::from_frac(1, 4),
            Cyclotomic::from_int(-5),
        ];
        let mut got = roots_in_field(&poly_from_roots(&roots), &f);
        let mut want = roots;
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn non_split_polynomial_has_fewer_roots() {
        // t^2 - 2 has no rational roots; times (t - 1)
        let f = CyclotomicField::new(1);
        let poly = vec![
            Cyclotomic::from_int(2),
            Cyclotomic::from_int(-2),
            Cyclotomic::from_int(-1),
            Cyclotomic::one(),
        ];
        assert_eq!(roots_in_field(&poly, &f), vec![Cyclotomic::one()]);
    }
}
