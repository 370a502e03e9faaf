//! The index sets `G₁(α)` and `G₂(α)` over distinct-entry tuples.
//!
//! `γ ≼ α` when `{γ_i}` precedes `{α_i}` in the lexicographic order on
//! subsets of `N`, i.e. `Σ 2^{−γ_i} ≥ Σ 2^{−α_i}`. Permutations are stored
//! zero-based: `σ[j]` is the image of `j`.

use std::collections::BTreeSet;

use super::{permutations, GroupAlgebraError};

/// `(γ, σ)`.
pub type GPair = (Vec<u32>, Vec<usize>);

/// `γ ≼ α`, compared exactly after scaling by `2^{max entry}`.
pub fn precedes(gamma: &[u32], alpha: &[u32]) -> bool {
    let top = gamma.iter().chain(alpha).copied().max().unwrap_or(0);
    assert!(top < 127, "entries too large for exact comparison");
    let weight = |t: &[u32]| t.iter().map(|&x| 1u128 << (top - x)).sum::<u128>();
    weight(gamma) >= weight(alpha)
}

fn check_alpha(alpha: &[u32]) -> Result<(), GroupAlgebraError> {
    if alpha.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GroupAlgebraError::NotIncreasing(alpha.to_vec()));
    }
    Ok(())
}

/// Maximal runs of consecutive values in `α`, as position blocks.
pub fn young_blocks(alpha: &[u32]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for j in 0..alpha.len() {
        match blocks.last_mut() {
            Some(b) if alpha[j] == alpha[j - 1] + 1 => b.push(j),
            _ => blocks.push(vec![j]),
        }
    }
    blocks
}

/// `G₁(α)` by brute force over every distinct-entry `γ ∈ [0, bound]^k`.
pub fn g1(alpha: &[u32], bound: u32) -> Result<BTreeSet<GPair>, GroupAlgebraError> {
    check_alpha(alpha)?;
    let k = alpha.len();
    let perms = permutations(k);
    let mut out = BTreeSet::new();
    let mut gamma = vec![0u32; k];
    loop {
        let distinct = (0..k).all(|i| (i + 1..k).all(|j| gamma[i] != gamma[j]));
        if distinct && precedes(&gamma, alpha) {
            for (s, _) in &perms {
                if (0..k).all(|j| gamma[j] as i64 - s[j] as i64 == alpha[j] as i64 - j as i64) {
                    out.insert((gamma.clone(), s.clone()));
                }
            }
        }
        // odometer over [0, bound]^k
        let Some(i) = (0..k).rev().find(|&i| gamma[i] < bound) else {
            return Ok(out);
        };
        gamma[i] += 1;
        for g in gamma[i + 1..].iter_mut() {
            *g = 0;
        }
    }
}

/// `G₂(α)`: `σ` in the Young subgroup of the consecutive blocks, `γ = α∘σ`.
pub fn g2(alpha: &[u32]) -> Result<BTreeSet<GPair>, GroupAlgebraError> {
    check_alpha(alpha)?;
    let k = alpha.len();
    let blocks = young_blocks(alpha);
    let block_of: Vec<usize> = (0..k).map(|j| blocks.iter().position(|b| b.contains(&j)).unwrap()).collect();
    Ok(permutations(k)
        .into_iter()
        .filter(|(s, _)| (0..k).all(|j| block_of[s[j]] == block_of[j]))
        .map(|(s, _)| ((0..k).map(|j| alpha[s[j]]).collect(), s))
        .collect())
}

/// `G₁(α) = G₂(α)`, with `γ` enumerated up to `bound` (default `max α`; a
/// `γ` in `G₁(α)` has `γ_j = α_j − j + σ(j) ≤ α_k`).
pub fn g_sets_equal(alpha: &[u32], bound: Option<u32>) -> Result<bool, GroupAlgebraError> {
    let bound = bound.unwrap_or_else(|| alpha.iter().copied().max().unwrap_or(0));
    Ok(g1(alpha, bound)? == g2(alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert!(precedes(&[0, 1], &[0, 2]));
        assert!(!precedes(&[0, 2], &[0, 1]));
        assert!(precedes(&[1, 0], &[0, 1]));
        assert!(precedes(&[0, 3], &[1, 2]));
    }

    #[test]
    fn staircase() {
        let alpha = [0, 1, 2];
        let g = g2(&alpha).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|(gamma, s)| (0..3).all(|j| gamma[j] == alpha[s[j]])));
        assert!(g_sets_equal(&alpha, None).unwrap());
    }

    #[test]
    fn separated_entries() {
        let alpha = [0, 2, 4];
        assert_eq!(g2(&alpha).unwrap().into_iter().collect::<Vec<_>>(), vec![(vec![0, 2, 4], vec![0, 1, 2])]);
        assert!(g_sets_equal(&alpha, None).unwrap());
    }

    #[test]
    fn mixed_blocks() {
        let alpha = [0, 1, 3];
        assert_eq!(young_blocks(&alpha), vec![vec![0, 1], vec![2]]);
        assert_eq!(g2(&alpha).unwrap().len(), 2);
        assert!(g_sets_equal(&alpha, None).unwrap());
        assert_eq!(g_sets_equal(&[2, 1], None), Err(GroupAlgebraError::NotIncreasing(vec![2, 1])));
    }

    #[test]
    fn larger_bound_adds_nothing() {
        for alpha in [[0u32, 1, 3], [1, 2, 5], [0, 3, 4]] {
            assert_eq!(g1(&alpha, 5).unwrap(), g1(&alpha, 8).unwrap());
        }
    }
}
