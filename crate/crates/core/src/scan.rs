//! Torsion of `H_{k−2}(X_{A,k}; Z)` across a family of instances, with the
//! consistency checks each instance must pass.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::{ComplexError, SumComplex};
use crate::fields::is_prime;
use crate::homology::{betti_in_characteristic, torsion, HomologyError};
use crate::spectral::dim_h_char_p;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("{check} failed for p = {p}, A = {a:?}")]
    Check { check: &'static str, p: u64, a: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub p: u64,
    pub k: usize,
    pub a: Vec<u32>,
    /// `N = f_{k−1}`.
    pub n: usize,
    pub divisors: Vec<BigInt>,
    /// `|H_{k−2}(X)_{tor}|`.
    pub order: BigInt,
    /// `ln |tor| / N`.
    pub log_ratio: f64,
    pub euler: i128,
    pub betti_q: Vec<usize>,
    pub betti_p: Vec<usize>,
}

/// Natural log of a positive big integer.
pub fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        let v: f64 = n.to_string().parse().unwrap();
        return v.ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    let v: f64 = top.to_string().parse().unwrap();
    v.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Computes one instance and checks: the two forms of `χ̃` agree and match
/// the rational Betti numbers; the `F_p` Betti numbers exceed the rational
/// ones by exactly the number of invariant factors divisible by `p`; and the
/// top `F_p` Betti number matches the closed form.
pub fn scan_instance(p: u64, k: usize, a: &[i64]) -> Result<ScanRecord, ScanError> {
    let x = SumComplex::build(p, k, a)?;
    let residues = x.residues().to_vec();
    let fail = |check| ScanError::Check { check, p, a: residues.clone() };
    let euler = x.reduced_euler_characteristic();
    let integral = torsion(&x)?;
    let betti_q = integral.reduced_betti.clone();
    let chi: i128 = betti_q.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i128 } else { -(b as i128) }).sum();
    if chi != euler {
        return Err(fail("Euler characteristic"));
    }
    let betti_p = betti_in_characteristic(&x, p);
    let extra = integral.torsion_divisors.iter().filter(|d| (*d % p).is_zero()).count();
    for i in 0..k {
        let torsion_shift = if i + 2 == k || i + 1 == k { extra } else { 0 };
        if betti_p[i] != betti_q[i] + torsion_shift {
            return Err(fail("rank over F_p versus Q"));
        }
    }
    if betti_p[k - 1] != dim_h_char_p(p, k, x.m()) {
        return Err(fail("closed form over F_p"));
    }
    let order = integral.torsion_order();
    let n = x.top_count();
    let log_ratio = if order.is_one() { 0.0 } else { ln_big(&order) / n as f64 };
    Ok(ScanRecord { p, k, a: residues, n, divisors: integral.torsion_divisors, order, log_ratio, euler, betti_q, betti_p })
}

/// Instances `A = {0, 1, a}` for `2 ≤ a < p`, over every prime in `primes`.
pub fn family_0_1_a(primes: impl IntoIterator<Item = u64>) -> Vec<(u64, Vec<i64>)> {
    primes
        .into_iter()
        .filter(|&p| is_prime(p) && p > 3)
        .flat_map(|p| (2..p as i64).map(move |a| (p, vec![0, 1, a])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_record() {
        let r = scan_instance(7, 3, &[0, 1, 3]).unwrap();
        assert_eq!(r.n, 15);
        assert_eq!(r.divisors, vec![BigInt::from(2)]);
        assert_eq!(r.order, BigInt::from(2));
        assert!((r.log_ratio - 2f64.ln() / 15.0).abs() < 1e-12);
        assert_eq!(r.betti_p, vec![0, 0, 0]);
    }

    #[test]
    fn family_members() {
        let fam = family_0_1_a([11, 12, 13]);
        assert_eq!(fam.len(), 9 + 11);
        assert_eq!(fam[0], (11, vec![0, 1, 2]));
    }

    #[test]
    fn big_logarithm() {
        let n = BigInt::from(3).pow(2000);
        assert!((ln_big(&n) - 2000.0 * 3f64.ln()).abs() < 1e-6);
        assert!((ln_big(&BigInt::from(1000)) - 1000f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn small_scan_is_consistent() {
        for (p, a) in family_0_1_a([11, 13]) {
            let r = scan_instance(p, 3, &a).unwrap();
            assert!(r.order >= BigInt::one());
        }
    }
}

