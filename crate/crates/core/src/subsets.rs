//! k-subsets of `{0, …, n−1}` as sorted vectors, with explicit successor rules.

/// `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Advances `s` to the next k-subset of `[0, n)` in lexicographic order.
/// Returns false (leaving `s` unchanged) at the last subset.
pub fn next_lex(s: &mut [u32], n: u32) -> bool {
    let k = s.len();
    let Some(i) = (0..k).rev().find(|&i| s[i] < n - (k - i) as u32) else {
        return false;
    };
    s[i] += 1;
    for j in i + 1..k {
        s[j] = s[j - 1] + 1;
    }
    true
}

/// Advances `s` to the next k-subset of `[0, n)` in colexicographic order.
pub fn next_colex(s: &mut [u32], n: u32) -> bool {
    let k = s.len();
    for i in 0..k {
        let limit = if i + 1 < k { s[i + 1] } else { n };
        if s[i] + 1 < limit {
            s[i] += 1;
            for (j, x) in s[..i].iter_mut().enumerate() {
                *x = j as u32;
            }
            return true;
        }
    }
    false
}

/// Iterator over k-subsets in lexicographic order.
#[derive(Clone, Debug)]
pub struct Lex {
    n: u32,
    current: Option<Vec<u32>>,
}

pub fn lex(n: u32, k: usize) -> Lex {
    let current = (k as u32 <= n).then(|| (0..k as u32).collect());
    Lex { n, current }
}

impl Iterator for Lex {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        if !next_lex(cur, self.n) {
            self.current = None;
        }
        Some(out)
    }
}

/// Iterator over k-subsets in colexicographic order.
#[derive(Clone, Debug)]
pub struct Colex {
    n: u32,
    current: Option<Vec<u32>>,
}

pub fn colex(n: u32, k: usize) -> Colex {
    let current = (k as u32 <= n).then(|| (0..k as u32).collect());
    Colex { n, current }
}

impl Iterator for Colex {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        if !next_colex(cur, self.n) {
            self.current = None;
        }
        Some(out)
    }
}

/// Every subset of `[0, n)` with size in `sizes`, grouped by size then lex.
pub fn subsets_with_sizes(n: u32, sizes: impl IntoIterator<Item = usize>) -> Vec<Vec<u32>> {
    sizes.into_iter().flat_map(|k| lex(n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(n: u32, k: usize) -> BTreeSet<Vec<u32>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn lex_matches_sorted_bitmask_enumeration() {
        for n in 0..9 {
            for k in 0..=n as usize + 1 {
                let got: Vec<_> = lex(n, k).collect();
                let expected: Vec<_> = brute(n, k).into_iter().collect();
                assert_eq!(got, expected, "n={n} k={k}");
                assert_eq!(got.len() as u128, binomial(n as u64, k as u64));
            }
        }
    }

    #[test]
    fn colex_covers_each_subset_once() {
        for n in 1..9 {
            for k in 1..=n as usize {
                let got: Vec<_> = colex(n, k).collect();
                let set: BTreeSet<_> = got.iter().cloned().collect();
                assert_eq!(set.len(), got.len());
                assert_eq!(set, brute(n, k));
                // colex: compare reversed vectors
                for w in got.windows(2) {
                    let a: Vec<_> = w[0].iter().rev().collect();
                    let b: Vec<_> = w[1].iter().rev().collect();
                    assert!(a < b);
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(83, 3), 91881);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
