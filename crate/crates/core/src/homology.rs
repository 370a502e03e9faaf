//! Reduced homology of sum complexes by boundary-matrix reduction.
//!
//! Boundary matrices have integer entries, so the rank over any field only
//! depends on its characteristic: ranks over `F_{ℓ^d}` are computed mod `ℓ`
//! and ranks over `Q(ω_p)` over `Q`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::complex::SumComplex;
use crate::fields::FieldSpec;
use crate::linalg::{rank_over, rank_rational, smith_normal_form_i64, Matrix};

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    Field(FieldSpec),
    Integers,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomologyProfile {
    pub coefficients: Coefficients,
    /// Reduced Betti numbers indexed by dimension `0..=k−1`. In integer mode
    /// these are the free ranks.
    pub reduced_betti: Vec<usize>,
    /// Elementary divisors `> 1` of the torsion of `H_{k−2}` (integer mode only).
    pub torsion_divisors: Vec<BigInt>,
}

impl HomologyProfile {
    /// `Σ (−1)^i b̃_i`.
    pub fn euler_characteristic(&self) -> i128 {
        self.reduced_betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i128 } else { -(b as i128) })
            .sum()
    }

    /// The top reduced Betti number `b̃_{k−1}`.
    pub fn top(&self) -> usize {
        *self.reduced_betti.last().unwrap()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_divisors.iter().product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary ∂_{dim} has a non-unit invariant factor {divisor}")]
    LowerTorsion { dim: usize, divisor: BigInt },
}

/// `∂_0` (augmentation) through `∂_{k−1}`.
fn boundary(x: &SumComplex, i: usize) -> Matrix<i64> {
    if i == 0 {
        x.augmentation()
    } else {
        x.boundary_matrix(i).expect("index in range")
    }
}

/// `[rank ∂_0, …, rank ∂_{k−1}]` in the given characteristic.
pub fn boundary_ranks(x: &SumComplex, characteristic: u64) -> Vec<usize> {
    (0..x.k()).map(|i| rank_over(&boundary(x, i), characteristic)).collect()
}

fn betti_from_ranks(x: &SumComplex, ranks: &[usize]) -> Vec<usize> {
    let f = x.f_vector();
    (0..x.k())
        .map(|i| {
            let outgoing = ranks[i];
            let incoming = ranks.get(i + 1).copied().unwrap_or(0);
            f[i] as usize - outgoing - incoming
        })
        .collect()
}

/// Reduced Betti numbers in characteristic `characteristic` (0 or a prime).
pub fn betti_in_characteristic(x: &SumComplex, characteristic: u64) -> Vec<usize> {
    let b = betti_from_ranks(x, &boundary_ranks(x, characteristic));
    let chi: i128 = b.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { v as i128 } else { -(v as i128) }).sum();
    assert_eq!(chi, x.reduced_euler_characteristic(), "Betti numbers disagree with χ̃");
    b
}

/// `dim H_{k−1}(X; F) = f_{k−1} − rank ∂_{k−1}`; cheaper than the full profile.
pub fn top_betti(x: &SumComplex, characteristic: u64) -> usize {
    x.top_count() - rank_over(&boundary(x, x.k() - 1), characteristic)
}

pub fn betti(x: &SumComplex, field: &FieldSpec) -> HomologyProfile {
    HomologyProfile {
        coefficients: Coefficients::Field(field.clone()),
        reduced_betti: betti_in_characteristic(x, field.characteristic()),
        torsion_divisors: Vec::new(),
    }
}

/// Integral homology: free ranks plus the torsion of `H_{k−2}`, read off the
/// Smith form of `∂_{k−1}`. The full skeleton makes `∂_{k−2}` unimodular in
/// its invariant factors; that is checked rather than assumed.
pub fn torsion(x: &SumComplex) -> Result<HomologyProfile, HomologyError> {
    let k = x.k();
    let top = smith_normal_form_i64(&boundary(x, k - 1));
    let lower = smith_normal_form_i64(&boundary(x, k - 2));
    if let Some(d) = lower.divisors.iter().find(|d| **d != BigInt::from(1)) {
        return Err(HomologyError::LowerTorsion { dim: k - 2, divisor: d.clone() });
    }
    let mut ranks: Vec<usize> = (0..k.saturating_sub(2)).map(|i| rank_rational(&boundary(x, i))).collect();
    ranks.push(lower.rank());
    ranks.push(top.rank());
    Ok(HomologyProfile {
        coefficients: Coefficients::Integers,
        reduced_betti: betti_from_ranks(x, &ranks),
        torsion_divisors: top.torsion(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;

    fn field(l: u64, p: u64) -> FieldSpec {
        make_field(l, p).unwrap()
    }

    #[test]
    fn projective_plane() {
        let x = SumComplex::build(7, 3, &[0, 1, 3]).unwrap();
        assert_eq!(betti(&x, &field(2, 7)).reduced_betti, vec![0, 1, 1]);
        assert_eq!(betti(&x, &field(7, 7)).reduced_betti, vec![0, 0, 0]);
        assert_eq!(betti(&x, &field(0, 7)).reduced_betti, vec![0, 0, 0]);
        assert_eq!(betti(&x, &field(3, 7)).reduced_betti, vec![0, 0, 0]);
        let t = torsion(&x).unwrap();
        assert_eq!(t.torsion_divisors, vec![BigInt::from(2)]);
        assert_eq!(t.reduced_betti, vec![0, 0, 0]);
    }

    #[test]
    fn graph_cases() {
        let x = SumComplex::build(5, 2, &[0, 1, 2]).unwrap();
        let h = betti(&x, &field(5, 5));
        assert_eq!(h.reduced_betti, vec![0, 2]);
        assert_eq!(h.euler_characteristic(), -2);
        let y = SumComplex::build(5, 2, &[0]).unwrap();
        let t = torsion(&y).unwrap();
        assert!(t.torsion_divisors.is_empty());
        // two disjoint edges on five vertices: three components
        assert_eq!(t.reduced_betti, vec![2, 0]);
    }

    #[test]
    fn lower_dimensions_vanish() {
        for a in [vec![0i64], vec![0, 2], vec![1, 2, 4, 6]] {
            let x = SumComplex::build(7, 4, &a).unwrap();
            for l in [0u64, 2, 7] {
                let b = betti_in_characteristic(&x, l);
                assert!(b[..2].iter().all(|&v| v == 0), "{b:?}");
                assert_eq!(top_betti(&x, l), b[3]);
            }
        }
    }

    #[test]
    fn universal_coefficients_against_torsion() {
        for a in [vec![0i64, 1, 3], vec![0, 1, 5], vec![2, 3, 9], vec![0, 1, 2, 7]] {
            let x = SumComplex::build(11, 3, &a).unwrap();
            let t = torsion(&x).unwrap();
            let q = betti_in_characteristic(&x, 0);
            assert_eq!(q, t.reduced_betti);
            for l in [2u64, 3, 5, 7, 11] {
                let b = betti_in_characteristic(&x, l);
                let extra = t.torsion_divisors.iter().filter(|d| *d % l == BigInt::from(0)).count();
                assert_eq!(b[1], q[1] + extra, "ℓ={l} A={a:?}");
                assert_eq!(b[2], q[2] + extra, "ℓ={l} A={a:?}");
            }
        }
    }
}
