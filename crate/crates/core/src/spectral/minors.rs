//! Square minors of the Fourier matrix `(ω^{ij})` over `Z[x]/(x^p − 1)`.
//!
//! A minor with rows `R` and columns `C` is expanded along its last column,
//! so every minor on a column prefix is available when a column is added.
//! Walking column sets depth-first shares those prefixes between sets. A
//! minor vanishes in `Q(ω_p)` exactly when its coefficients are all equal.

use crate::subsets::{binomial, colex};

/// Every minor on one column prefix, indexed by the colex rank of its row set.
struct Layer {
    size: usize,
    dets: Vec<Vec<i64>>,
}

struct Walker {
    p: usize,
    choose: Vec<Vec<usize>>,
}

impl Walker {
    fn new(p: usize) -> Self {
        // Cofactors are bounded by size! ≤ p!, which must fit in i64.
        assert!(p <= 19, "Fourier minors are tracked in i64 only up to p = 19");
        let choose = (0..=p).map(|n| (0..=p).map(|k| binomial(n as u64, k as u64) as usize).collect()).collect();
        Walker { p, choose }
    }

    fn colex_rank(&self, rows: impl Iterator<Item = u32>) -> usize {
        rows.enumerate().map(|(t, r)| self.choose[r as usize][t + 1]).sum()
    }

    fn root(&self) -> Layer {
        let mut one = vec![0; self.p];
        one[0] = 1;
        Layer { size: 0, dets: vec![one] }
    }

    /// Appends column `c` to the prefix behind `prev`.
    fn extend(&self, prev: &Layer, c: u32) -> Layer {
        let j = prev.size + 1;
        let p = self.p;
        let mut dets = Vec::with_capacity(self.choose[p][j]);
        for rows in colex(p as u32, j) {
            let mut acc = vec![0i64; p];
            for t in 0..j {
                let minor = &prev.dets[self.colex_rank(rows.iter().enumerate().filter(|&(s, _)| s != t).map(|(_, &r)| r))];
                let shift = (rows[t] as usize * c as usize) % p;
                let negate = (t + j - 1) % 2 == 1;
                for (e, &v) in minor.iter().enumerate() {
                    let slot = &mut acc[(e + shift) % p];
                    *slot = if negate { *slot - v } else { *slot + v };
                }
            }
            dets.push(acc);
        }
        Layer { size: j, dets }
    }

    fn walk(&self, prefix: &mut Vec<u32>, layer: &Layer, visit: &mut impl FnMut(&[u32], bool)) {
        let start = prefix.last().map_or(0, |&c| c + 1);
        for c in start..self.p as u32 {
            let next = self.extend(layer, c);
            prefix.push(c);
            visit(prefix, next.dets.iter().all(|d| !vanishes(d)));
            self.walk(prefix, &next, visit);
            prefix.pop();
        }
    }
}

fn vanishes(d: &[i64]) -> bool {
    d.iter().all(|&v| v == d[0])
}

/// Calls `visit(A, all_nonzero)` for every nonempty `A ⊆ F_p`, where
/// `all_nonzero` says whether every `|A|×|A|` minor of `(ω^{ij})` with column
/// set `A` is nonzero over `Q(ω_p)`.
pub fn for_each_column_set(p: u64, mut visit: impl FnMut(&[u32], bool)) {
    let w = Walker::new(p as usize);
    w.walk(&mut Vec::new(), &w.root(), &mut visit);
}

/// Whether every square minor with column set `a` (sorted) is nonzero.
pub fn all_square_minors_nonzero(p: u64, a: &[u32]) -> bool {
    let w = Walker::new(p as usize);
    let layer = a.iter().fold(w.root(), |layer, &c| w.extend(&layer, c));
    layer.dets.iter().all(|d| !vanishes(d))
}

/// Determinant of the square submatrix with the given rows and columns, as
/// a vector in `Z[x]/(x^p − 1)`.
pub fn minor(p: u64, rows: &[u32], cols: &[u32]) -> Vec<i64> {
    assert_eq!(rows.len(), cols.len());
    let w = Walker::new(p as usize);
    let layer = cols.iter().fold(w.root(), |layer, &c| w.extend(&layer, c));
    layer.dets[w.colex_rank(rows.iter().copied())].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz expansion with exponents summed mod p.
    fn leibniz(p: usize, rows: &[u32], cols: &[u32]) -> Vec<i64> {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(Vec::new(), false)];
            }
            let mut out = Vec::new();
            for (perm, odd) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = perm.clone();
                    q.insert(pos, n - 1);
                    // inserting at pos moves n−1 past (n−1−pos) entries
                    out.push((q, odd ^ ((n - 1 - pos) % 2 == 1)));
                }
            }
            out
        }
        let mut acc = vec![0i64; p];
        for (perm, odd) in perms(rows.len()) {
            let e: usize = perm.iter().enumerate().map(|(i, &j)| rows[i] as usize * cols[j] as usize).sum();
            acc[e % p] += if odd { -1 } else { 1 };
        }
        acc
    }

    #[test]
    fn matches_leibniz() {
        let p = 7;
        for cols in [vec![0u32, 1, 3], vec![2, 4, 5], vec![1, 6]] {
            for rows in colex(p as u32, cols.len()) {
                assert_eq!(minor(p as u64, &rows, &cols), leibniz(p, &rows, &cols), "{rows:?} {cols:?}");
            }
        }
    }

    #[test]
    fn visits_every_nonempty_subset_once() {
        let mut seen = std::collections::BTreeSet::new();
        for_each_column_set(5, |a, ok| {
            assert!(seen.insert(a.to_vec()));
            assert!(ok);
            assert_eq!(ok, all_square_minors_nonzero(5, a));
        });
        assert_eq!(seen.len(), 31);
    }

    #[test]
    fn vanishing_minor_is_detected() {
        // 1×1 minors are monomials; constant vectors are multiples of Φ_p
        assert!(!vanishes(&minor(5, &[3], &[2])));
        assert!(vanishes(&[2, 2, 2, 2, 2]));
    }
}
