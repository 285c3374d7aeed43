//! Primitive idempotents of a commutative algebra given by structure constants.

use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::roots::roots_in_field;
use super::{Cyclotomic, CyclotomicField, ExactMatrix};
use crate::error::{Error, Result};

const MAX_ATTEMPTS: usize = 8;

/// A finite-dimensional algebra: `table[i][j]` holds the coordinates of `e_i e_j`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub dim: usize,
    pub unit: Vec<Cyclotomic>,
    pub table: Vec<Vec<Vec<Cyclotomic>>>,
}

impl StructureConstants {
    pub fn multiply(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &(&s * t);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a`.
    pub fn left_matrix(&self, a: &[Cyclotomic]) -> ExactMatrix {
        let cols: Vec<Vec<Cyclotomic>> = (0..self.dim)
            .map(|k| {
                let mut ek = vec![Cyclotomic::zero(); self.dim];
                ek[k] = Cyclotomic::one();
                self.multiply(a, &ek)
            })
            .collect();
        ExactMatrix::from_columns(&cols)
    }
}

fn sub(a: &[Cyclotomic], b: &[Cyclotomic]) -> Vec<Cyclotomic> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[Cyclotomic], c: &Cyclotomic) -> Vec<Cyclotomic> {
    a.iter().map(|x| x * c).collect()
}

/// Reduction modulo a subspace given by its RREF rows.
struct Quotient {
    rows: Vec<Vec<Cyclotomic>>,
    pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl Quotient {
    fn new(dim: usize, subspace: &[Vec<Cyclotomic>]) -> Self {
        if subspace.is_empty() {
            return Quotient {
                rows: Vec::new(),
                pivots: Vec::new(),
                complement: (0..dim).collect(),
            };
        }
        let rref = ExactMatrix::from_rows(subspace.to_vec()).rref();
        let rows = (0..rref.pivots.len()).map(|r| rref.matrix.row(r).to_vec()).collect();
        let complement = (0..dim).filter(|c| !rref.pivots.contains(c)).collect();
        Quotient {
            rows,
            pivots: rref.pivots,
            complement,
        }
    }

    fn coords(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        self.complement.iter().map(|&c| v[c].clone()).collect()
    }
}

/// Orthogonal primitive idempotents summing to 1, as coordinate vectors.
///
/// Works over `field`; the semisimple quotient must split over it.
pub fn idempotents_of_commutative_algebra(
    alg: &StructureConstants,
    field: &Arc<CyclotomicField>,
    seed: u64,
) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = alg.dim;
    for i in 0..n {
        for j in i + 1..n {
            if alg.table[i][j] != alg.table[j][i] {
                return Err(Error::NotCommutative(i, j));
            }
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // Radical = kernel of the trace form.
    let basis_traces: Vec<Cyclotomic> = (0..n)
        .map(|k| {
            let mut ek = vec![Cyclotomic::zero(); n];
            ek[k] = Cyclotomic::one();
            alg.left_matrix(&ek).trace()
        })
        .collect();
    let gram = ExactMatrix::from_rows(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = Cyclotomic::zero();
                        for (c, t) in alg.table[i][j].iter().zip(&basis_traces) {
                            if !c.is_zero() && !t.is_zero() {
                                acc += &(c * t);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect(),
    );
    let radical = gram.kernel();
    let quotient = Quotient::new(n, &radical);
    let s_dim = quotient.complement.len();
    if s_dim == 1 {
        return Ok(vec![alg.unit.clone()]);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut x = vec![Cyclotomic::zero(); n];
        for &c in &quotient.complement {
            let v: i64 = rng.gen_range(-1000..=1000);
            x[c] = Cyclotomic::from_int(v);
        }
        // Krylov sequence 1, x, x^2, ... in the quotient.
        let mut powers = vec![alg.unit.clone()];
        let mut krylov = vec![quotient.coords(&alg.unit)];
        let relation = loop {
            let next = alg.multiply(powers.last().unwrap(), &x);
            let coords = quotient.coords(&next);
            let m = ExactMatrix::from_columns(&krylov);
            if let Some(sol) = m.solve(&coords) {
                break sol;
            }
            powers.push(next);
            krylov.push(coords);
        };
        let degree = relation.len();
        if degree < s_dim {
            continue;
        }
        // minimal polynomial t^d - sum sol_k t^k
        let mut poly: Vec<Cyclotomic> = relation.iter().map(|c| -c).collect();
        poly.push(Cyclotomic::one());
        let roots = roots_in_field(&poly, field);
        if roots.len() < degree {
            return Err(Error::FieldExtensionNeeded {
                conductor: field.conductor(),
                found: roots.len(),
                needed: degree,
            });
        }
        let mut idempotents = Vec::with_capacity(degree);
        for (i, ri) in roots.iter().enumerate() {
            // Lagrange interpolation polynomial evaluated at x.
            let mut e = alg.unit.clone();
            for (j, rj) in roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = (ri - rj).inv().expect("distinct roots");
                let shifted = sub(&x, &scale(&alg.unit, rj));
                e = scale(&alg.multiply(&e, &shifted), &denom);
            }
            idempotents.push(lift_idempotent(alg, e));
        }
        verify(alg, &idempotents)?;
        return Ok(idempotents);
    }
    Err(Error::FieldExtensionNeeded {
        conductor: field.conductor(),
        found: 0,
        needed: s_dim,
    })
}

/// Newton iteration `e <- 3e^2 - 2e^3`, exact once the radical part is killed.
fn lift_idempotent(alg: &StructureConstants, mut e: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
    let three = Cyclotomic::from_int(3);
    let two = Cyclotomic::from_int(2);
    loop {
        let e2 = alg.multiply(&e, &e);
        if e2 == e {
            return e;
        }
        let e3 = alg.multiply(&e2, &e);
        e = sub(&scale(&e2, &three), &scale(&e3, &two));
    }
}

fn verify(alg: &StructureConstants, idem: &[Vec<Cyclotomic>]) -> Result<()> {
    let n = alg.dim;
    let mut total = vec![Cyclotomic::zero(); n];
    for (i, e) in idem.iter().enumerate() {
        for (t, v) in total.iter_mut().zip(e) {
            *t += v;
        }
        for f in &idem[i + 1..] {
            assert!(
                alg.multiply(e, f).iter().all(|v| v.is_zero()),
                "lifted idempotents are not orthogonal"
            );
        }
    }
    assert_eq!(total, alg.unit, "idempotents do not sum to 1");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v)
    }

    /// Q[u]/(u^2 - a u - b) in basis {1, u}.
    fn quadratic(a: i64, b: i64) -> StructureConstants {
        let one = vec![c(1), c(0)];
        let u = vec![c(0), c(1)];
        StructureConstants {
            dim: 2,
            unit: one.clone(),
            table: vec![vec![one, u.clone()], vec![u, vec![c(b), c(a)]]],
        }
    }

    #[test]
    fn split_idempotent() {
        let f = CyclotomicField::new(1);
        let mut idem = idempotents_of_commutative_algebra(&quadratic(1, 0), &f, 1).unwrap();
        idem.sort();
        let mut want = vec![vec![c(0), c(1)], vec![c(1), c(-1)]];
        want.sort();
        assert_eq!(idem, want);
    }

    #[test]
    fn local_algebra() {
        let f = CyclotomicField::new(1);
        let idem = idempotents_of_commutative_algebra(&quadratic(0, 0), &f, 1).unwrap();
        assert_eq!(idem, vec![vec![c(1), c(0)]]);
    }

    #[test]
    fn u_squared_minus_one() {
        let f = CyclotomicField::new(1);
        let mut idem = idempotents_of_commutative_algebra(&quadratic(0, 1), &f, 3).unwrap();
        idem.sort();
        let h = Cyclotomic::from_frac(1, 2);
        let mut want = vec![vec![h.clone(), h.clone()], vec![h.clone(), -&h]];
        want.sort();
        assert_eq!(idem, want);
    }

    #[test]
    fn needs_extension() {
        // Q[u]/(u^2 + 1) does not split over Q but does over Q(i).
        let q = CyclotomicField::new(1);
        assert!(matches!(
            idempotents_of_commutative_algebra(&quadratic(0, -1), &q, 1),
            Err(Error::FieldExtensionNeeded { .. })
        ));
        let qi = CyclotomicField::new(4);
        assert_eq!(
            idempotents_of_commutative_algebra(&quadratic(0, -1), &qi, 1)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn detects_noncommutative() {
        let mut alg = quadratic(1, 0);
        alg.table[0][1] = vec![c(1), c(1)];
        assert!(matches!(
            idempotents_of_commutative_algebra(&alg, &CyclotomicField::new(1), 1),
            Err(Error::NotCommutative(0, 1))
        ));
    }

    #[test]
    fn radical_part_is_lifted() {
        // Q[u]/(u^2 (u - 1)) in basis {1, u, u^2}: u^3 = u^2.
        let e = |i: usize| {
            let mut v = vec![c(0); 3];
            v[i] = c(1);
            v
        };
        let table = (0..3)
            .map(|i| (0..3).map(|j| e((i + j).min(2))).collect())
            .collect();
        let alg = StructureConstants {
            dim: 3,
            unit: e(0),
            table,
        };
        let idem = idempotents_of_commutative_algebra(&alg, &CyclotomicField::new(1), 5).unwrap();
        assert_eq!(idem.len(), 2);
        assert!(idem.contains(&e(2)));
    }
}
