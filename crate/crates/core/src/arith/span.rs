//! Incrementally grown subspaces of `K^n`.

use num_traits::{One, Zero};

use super::Cyclotomic;

/// Echelon basis of a subspace; each stored row has a 1 at its pivot and
/// zeros at the pivots of earlier rows.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    n: usize,
    rows: Vec<(usize, Vec<Cyclotomic>)>,
}

impl EchelonSpan {
    pub fn new(n: usize) -> Self {
        EchelonSpan { n, rows: Vec::new() }
    }

    pub fn from_vectors<'a>(n: usize, vs: impl IntoIterator<Item = &'a Vec<Cyclotomic>>) -> Self {
        let mut s = Self::new(n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Residual of `v` after elimination; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Add `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Cyclotomic]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        let row: Vec<Cyclotomic> = r.iter().map(|x| x * &inv).collect();
        debug_assert!(row[p].is_one());
        self.rows.push((p, row));
        true
    }

    /// Indices not used as pivots: the residual of any vector is supported there.
    pub fn complement(&self) -> Vec<usize> {
        let piv = self.pivots();
        (0..self.n).filter(|i| !piv.contains(i)).collect()
    }

    /// Coordinates of `v` modulo the span, on the basis of complement unit vectors.
    pub fn quotient_coords(&self, v: &[Cyclotomic], complement: &[usize]) -> Vec<Cyclotomic> {
        let r = self.reduce(v);
        complement.iter().map(|&i| r[i].clone()).collect()
    }

    pub fn basis(&self) -> Vec<Vec<Cyclotomic>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Cyclotomic> {
        xs.iter().map(|&x| Cyclotomic::from_int(x)).collect()
    }

    #[test]
    fn grows_and_reduces() {
        let mut s = EchelonSpan::new(3);
        assert!(s.insert(&v(&[1, 2, 3])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(!s.insert(&v(&[2, 5, 7])));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[1, 3, 4])));
        let comp = s.complement();
        assert_eq!(comp, vec![2]);
        // (0,0,1) is not in the span, so it survives in the quotient
        assert_eq!(s.quotient_coords(&v(&[0, 0, 1]), &comp), v(&[1]));
        assert_eq!(s.quotient_coords(&v(&[1, 2, 3]), &comp), v(&[0]));
    }
}
