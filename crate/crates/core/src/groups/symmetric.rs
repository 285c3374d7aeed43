//! Partitions, standard tableaux, and Young's seminormal representations.

use num_traits::One;

use crate::arith::{Cyclotomic, ExactMatrix};

pub type Partition = Vec<usize>;

/// Partitions of `n` in reverse lexicographic order: `(n)` first.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn partition_label(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn parse_partition(s: &str) -> Option<Partition> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let p: Option<Partition> = inner.split(',').map(|t| t.trim().parse().ok()).collect();
    let p = p?;
    if p.windows(2).all(|w| w[0] >= w[1]) && p.iter().all(|&x| x > 0) {
        Some(p)
    } else {
        None
    }
}

/// Hook lengths of all cells, row by row.
pub fn hook_lengths(p: &[usize]) -> Vec<u32> {
    let conj = conjugate(p);
    let mut out = Vec::new();
    for (i, &row) in p.iter().enumerate() {
        for j in 0..row {
            out.push((row - j - 1 + conj[j] - i - 1 + 1) as u32);
        }
    }
    out
}

pub fn conjugate(p: &[usize]) -> Partition {
    let len = p.first().copied().unwrap_or(0);
    (0..len).map(|j| p.iter().filter(|&&r| r > j).count()).collect()
}

/// Standard tableau stored as the (row, column) cell of each entry `0..n`.
pub type Tableau = Vec<(usize, usize)>;

pub fn standard_tableaux(p: &[usize]) -> Vec<Tableau> {
    fn rec(p: &[usize], filled: &mut Vec<usize>, cur: &mut Tableau, out: &mut Vec<Tableau>) {
        let n: usize = p.iter().sum();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..p.len() {
            let ok = filled[r] < p[r] && (r == 0 || filled[r - 1] > filled[r]);
            if ok {
                cur.push((r, filled[r]));
                filled[r] += 1;
                rec(p, filled, cur, out);
                filled[r] -= 1;
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(p, &mut vec![0; p.len()], &mut Vec::new(), &mut out);
    out
}

fn content(cell: (usize, usize)) -> i64 {
    cell.1 as i64 - cell.0 as i64
}

/// Matrix of the simple transposition `(k, k+1)` (0-based `k`) in the
/// seminormal basis indexed by `tableaux`.
pub fn seminormal_simple(tableaux: &[Tableau], k: usize) -> ExactMatrix {
    let d = tableaux.len();
    let mut m = ExactMatrix::zeros(d, d);
    for (i, t) in tableaux.iter().enumerate() {
        let (a, b) = (t[k], t[k + 1]);
        if a.0 == b.0 {
            m.set(i, i, Cyclotomic::one());
        } else if a.1 == b.1 {
            m.set(i, i, -Cyclotomic::one());
        } else {
            let r = content(b) - content(a);
            let inv_r = Cyclotomic::from_frac(1, r);
            let mut swapped = t.clone();
            swapped.swap(k, k + 1);
            let j = tableaux.iter().position(|s| *s == swapped).expect("swapped tableau is standard");
            m.set(i, i, inv_r.clone());
            let off = if a.0 < b.0 {
                Cyclotomic::one()
            } else {
                &Cyclotomic::one() - &(&inv_r * &inv_r)
            };
            // column i is the image of v_T
            m.set(j, i, off);
        }
    }
    m
}

/// Seminormal matrix of an arbitrary permutation (one-line, 0-based).
pub fn seminormal_matrix(tableaux: &[Tableau], perm: &[usize]) -> ExactMatrix {
    // Write perm as a product of adjacent transpositions by bubble sort:
    // perm = s_{k_1} ... s_{k_r} where the word is recorded as we sort.
    let n = perm.len();
    let mut p = perm.to_vec();
    let mut word = Vec::new();
    loop {
        let Some(k) = (0..n.saturating_sub(1)).find(|&k| p[k] > p[k + 1]) else {
            break;
        };
        p.swap(k, k + 1);
        word.push(k);
    }
    // p o s_{k_1} o ... o s_{k_r} = id, so perm = s_{k_r} o ... o s_{k_1}
    let mut m = ExactMatrix::identity(tableaux.len());
    for &k in word.iter().rev() {
        m = &m * &seminormal_simple(tableaux, k);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
        b.iter().map(|&i| a[i]).collect()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn hooks_and_tableaux() {
        let mut h = hook_lengths(&[2, 1]);
        h.sort();
        assert_eq!(h, vec![1, 1, 3]);
        assert_eq!(standard_tableaux(&[3, 2]).len(), 5);
        assert_eq!(standard_tableaux(&[2, 2, 1]).len(), 5);
        assert_eq!(parse_partition("(2,1)"), Some(vec![2, 1]));
        assert_eq!(parse_partition("(1,2)"), None);
    }

    #[test]
    fn coxeter_relations_hold() {
        for n in 2..=5 {
            for p in partitions(n) {
                let tab = standard_tableaux(&p);
                let s: Vec<ExactMatrix> = (0..n - 1).map(|k| seminormal_simple(&tab, k)).collect();
                for k in 0..n - 1 {
                    assert!((&s[k] * &s[k]).is_identity(), "{p:?} s{k}^2");
                    if k + 2 < n {
                        let lhs = &(&s[k] * &s[k + 1]) * &s[k];
                        let rhs = &(&s[k + 1] * &s[k]) * &s[k + 1];
                        assert_eq!(lhs, rhs, "{p:?} braid at {k}");
                    }
                    for l in k + 2..n - 1 {
                        assert_eq!(&s[k] * &s[l], &s[l] * &s[k]);
                    }
                }
            }
        }
    }

    #[test]
    fn arbitrary_permutations_are_multiplicative() {
        let tab = standard_tableaux(&[2, 1, 1]);
        let a = vec![2, 0, 3, 1];
        let b = vec![1, 3, 0, 2];
        let ab = compose(&a, &b);
        assert_eq!(
            seminormal_matrix(&tab, &ab),
            &seminormal_matrix(&tab, &a) * &seminormal_matrix(&tab, &b)
        );
    }
}
