//! The formula side of the top homology: the matrices `M_β(i, j) = ω^{b_i a_j}`,
//! the rank-sum formula in characteristic prime to `p`, the closed form in
//! characteristic `p`, and the full-rank check in characteristic 0.

pub mod minors;

use rayon::prelude::*;
use thiserror::Error;

use crate::fields::{FieldError, FieldMode, FieldElement, FieldSpec};
use crate::linalg::{monomial, rank, rank_cyclotomic_integral, Matrix};
use crate::subsets::{binomial, colex, Colex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("the field has characteristic {0}, which divides p")]
    CharacteristicP(u64),
    #[error("characteristic {0} given where characteristic 0 is required")]
    NotCharacteristicZero(u64),
    #[error("field is built for p = {field}, not {p}")]
    WrongPrime { field: u64, p: u64 },
    #[error("k = {k} is outside 1..={p}")]
    BadK { k: usize, p: u64 },
    #[error("m·C(p,k) − Σ rank M_β = {value} is not divisible by p = {p}")]
    NotDivisible { value: u128, p: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `β = (b_1 < ⋯ < b_k)` with entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BetaIndex(Vec<u32>);

impl BetaIndex {
    pub fn new(p: u64, b: Vec<u32>) -> Option<Self> {
        let ok = b.windows(2).all(|w| w[0] < w[1]) && b.last().map_or(true, |&x| (x as u64) < p);
        ok.then_some(BetaIndex(b))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

/// All of `B_k`, in colex order.
pub fn betas(p: u64, k: usize) -> Colex {
    colex(p as u32, k)
}

/// The `k × m` matrix `(ω^{b_i a_j})`.
pub fn m_beta(field: &FieldSpec, a: &[u32], beta: &[u32]) -> Result<Matrix<FieldElement>, SpectralError> {
    let w = field.root_powers()?;
    let p = field.p();
    Ok(Matrix::from_fn(beta.len(), a.len(), |i, j| w[(beta[i] as u64 * a[j] as u64 % p) as usize].clone()))
}

/// Exponents `b_i a_j mod p`.
fn exponents(p: u64, a: &[u32], beta: &[u32]) -> Matrix<usize> {
    Matrix::from_fn(beta.len(), a.len(), |i, j| (beta[i] as u64 * a[j] as u64 % p) as usize)
}

/// Precomputed powers of ω for repeated rank evaluations.
pub struct RankEngine {
    field: FieldSpec,
    powers: Vec<FieldElement>,
}

impl RankEngine {
    pub fn new(field: &FieldSpec) -> Result<Self, SpectralError> {
        if field.characteristic() == field.p() {
            return Err(SpectralError::CharacteristicP(field.p()));
        }
        Ok(RankEngine { field: field.clone(), powers: field.root_powers()? })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// `rank M_β`. In characteristic 0 the elimination runs over `Z[ω]`;
    /// other fields use their own arithmetic.
    pub fn rank(&self, a: &[u32], beta: &[u32]) -> usize {
        let p = self.field.p();
        let e = exponents(p, a, beta);
        if self.field.mode() == FieldMode::CyclotomicRational {
            let ints = e.map(|&x| monomial(p as usize, x));
            if let Some(r) = rank_cyclotomic_integral(p as usize, &ints) {
                return r;
            }
        }
        rank(&self.field, &e.map(|&x| self.powers[x].clone()))
    }

    /// `rank M_β` by plain field elimination, with no integral shortcut.
    pub fn rank_by_field_elimination(&self, a: &[u32], beta: &[u32]) -> usize {
        let e = exponents(self.field.p(), a, beta);
        rank(&self.field, &e.map(|&x| self.powers[x].clone()))
    }

    /// `Σ_{β ∈ B_k} rank M_β`, evaluated in parallel; the sum does not depend
    /// on scheduling.
    pub fn rank_sum(&self, k: usize, a: &[u32]) -> u128 {
        let all: Vec<Vec<u32>> = betas(self.field.p(), k).collect();
        all.par_iter().map(|b| self.rank(a, b) as u128).sum()
    }
}

fn check_args(field: &FieldSpec, p: u64, k: usize) -> Result<(), SpectralError> {
    if field.p() != p {
        return Err(SpectralError::WrongPrime { field: field.p(), p });
    }
    if k == 0 || k as u64 > p {
        return Err(SpectralError::BadK { k, p });
    }
    if field.characteristic() == p {
        return Err(SpectralError::CharacteristicP(p));
    }
    Ok(())
}

/// `m·C(p,k) − Σ_β rank M_β`, the dimension of the space of kernels.
pub fn dim_r(field: &FieldSpec, p: u64, k: usize, a: &[u32]) -> Result<u128, SpectralError> {
    check_args(field, p, k)?;
    let engine = RankEngine::new(field)?;
    let total = a.len() as u128 * binomial(p, k as u64);
    let sum = engine.rank_sum(k, a);
    Ok(total - sum)
}

/// `(m/k) C(p−1, k−1) − (1/p) Σ_β rank M_β` for `char F ∤ p`.
pub fn dim_h_semisimple(field: &FieldSpec, p: u64, k: usize, a: &[u32]) -> Result<usize, SpectralError> {
    let r = dim_r(field, p, k, a)?;
    if r % p as u128 != 0 {
        return Err(SpectralError::NotDivisible { value: r, p });
    }
    Ok((r / p as u128) as usize)
}

/// `0` if `m ≤ k`, else `(m − k) C(p−1, k−1) / k` (integral).
pub fn dim_h_char_p(p: u64, k: usize, m: usize) -> usize {
    if m <= k {
        return 0;
    }
    let num = (m - k) as u128 * binomial(p - 1, k as u64 - 1);
    assert_eq!(num % k as u128, 0, "(m/k − 1)·C(p−1,k−1) is not integral");
    (num / k as u128) as usize
}

/// A matrix `M_β` of rank below `min(k, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deficiency {
    pub a: Vec<u32>,
    pub beta: Vec<u32>,
    pub rank: usize,
}

/// Checks `rank M_β = min(k, m)` for every `β ∈ B_k` and every `A` in
/// `family`, over a characteristic-0 field; returns the first deficiency.
pub fn chebotarev_check(field: &FieldSpec, k: usize, family: &[Vec<u32>]) -> Result<Option<Deficiency>, SpectralError> {
    check_args(field, field.p(), k)?;
    if field.characteristic() != 0 {
        return Err(SpectralError::NotCharacteristicZero(field.characteristic()));
    }
    let engine = RankEngine::new(field)?;
    let all: Vec<Vec<u32>> = betas(field.p(), k).collect();
    for a in family {
        let want = k.min(a.len());
        let bad = all.par_iter().find_first(|b| engine.rank(a, b) != want);
        if let Some(beta) = bad {
            return Ok(Some(Deficiency { a: a.clone(), beta: beta.clone(), rank: engine.rank(a, beta) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SumComplex;
    use crate::fields::make_field;
    use crate::homology::top_betti;
    use proptest::prelude::*;

    fn field(l: u64, p: u64) -> FieldSpec {
        make_field(l, p).unwrap()
    }

    #[test]
    fn m_beta_shapes() {
        let f = field(0, 7);
        let m = m_beta(&f, &[0, 1, 3], &[0, 2, 5]).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert!(m.row(0).iter().all(|x| f.is_one(x)));
        let m = m_beta(&f, &[0], &[1, 2, 4]).unwrap();
        assert!(m.entries().iter().all(|x| f.is_one(x)));
        assert_eq!(RankEngine::new(&f).unwrap().rank(&[0, 1, 3], &[0, 1, 2]), 3);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(dim_h_char_p(7, 3, 3), 0);
        assert_eq!(dim_h_char_p(5, 2, 3), 2);
        for (p, k) in [(5u64, 2usize), (7, 3), (11, 4)] {
            assert_eq!(dim_h_char_p(p, k, p as usize) as u128, binomial(p - 1, k as u64));
        }
    }

    #[test]
    fn semisimple_values() {
        let q5 = field(0, 5);
        assert_eq!(dim_h_semisimple(&q5, 5, 2, &[0, 1]).unwrap(), 0);
        assert_eq!(dim_h_semisimple(&q5, 5, 2, &[0, 1, 2]).unwrap(), 2);
        assert_eq!(dim_r(&q5, 5, 2, &[0, 1, 2]).unwrap(), 10);
        assert_eq!(dim_r(&q5, 5, 2, &[0, 1, 2, 3, 4]).unwrap(), 5 * binomial(4, 2));
        let f2 = field(2, 7);
        let x = SumComplex::build(7, 3, &[0, 1, 3]).unwrap();
        assert_eq!(dim_h_semisimple(&f2, 7, 3, &[0, 1, 3]).unwrap(), top_betti(&x, 2));
        assert_eq!(dim_h_semisimple(&f2, 7, 3, &[0, 1, 3]).unwrap(), 1);
        assert_eq!(dim_h_semisimple(&field(7, 7), 7, 3, &[0]), Err(SpectralError::CharacteristicP(7)));
        assert!(matches!(dim_h_semisimple(&q5, 7, 3, &[0]), Err(SpectralError::WrongPrime { .. })));
    }

    #[test]
    fn chebotarev_small() {
        for (p, k) in [(5u64, 2usize), (7, 3)] {
            let family: Vec<Vec<u32>> = colex(p as u32, k).collect();
            assert_eq!(chebotarev_check(&field(0, p), k, &family).unwrap(), None);
        }
        assert_eq!(
            chebotarev_check(&field(2, 7), 3, &[vec![0, 1, 3]]),
            Err(SpectralError::NotCharacteristicZero(2))
        );
    }

    #[test]
    fn integral_route_matches_field_elimination() {
        let f = field(0, 7);
        let engine = RankEngine::new(&f).unwrap();
        for a in [vec![0u32, 1, 3], vec![1, 2, 4, 6], vec![0, 5]] {
            for beta in betas(7, 3) {
                assert_eq!(engine.rank(&a, &beta), engine.rank_by_field_elimination(&a, &beta));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn rank_is_shift_invariant(
            (p, k) in prop::sample::select(vec![(5u64, 2usize), (7, 2), (7, 3)]),
            l in prop::sample::select(vec![0u64, 2, 3]),
            mask in 1u32..128,
            c in 0u32..7,
        ) {
            let a: Vec<u32> = (0..p as u32).filter(|i| mask >> i & 1 == 1).collect();
            prop_assume!(!a.is_empty());
            let mut shifted: Vec<u32> = a.iter().map(|&x| (x + c) % p as u32).collect();
            shifted.sort();
            let engine = RankEngine::new(&field(l, p)).unwrap();
            for beta in betas(p, k) {
                prop_assert_eq!(engine.rank(&a, &beta), engine.rank(&shifted, &beta));
            }
        }
    }
}
