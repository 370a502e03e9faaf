//! Uncertainty numbers `u_F(A) = min { rank T_f : ∅ ≠ supp f ⊆ A }` for
//! `A ⊆ F_p`, where `T_f g = f g` in `F[F_p]`.
//!
//! Fields are taken to contain the `p`-th roots of unity (a splitting field
//! of `x^p − 1`), which is all any rank in play depends on. Three routes:
//! exhaustive minimum over `f` (characteristic `p`), deficiencies of the
//! matrices `M_β` (characteristic prime to `p`), and the largest `k` with
//! nonzero top homology of `X_{A,k}`.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::SumComplex;
use crate::fields::{FieldElement, FieldSpec};
use crate::homology::top_betti;
use crate::linalg::{kernel_basis, rank, Matrix};
use crate::spectral::{betas, minors, RankEngine, SpectralError};

/// Default cap on `p^m` for the exhaustive search in characteristic `p`.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UncertaintyError {
    #[error("f is identically zero")]
    ZeroFunction,
    #[error("value at {0} lies outside the support set")]
    OutsideSupport(u32),
    #[error("exhaustive search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("{route} gives {got}, expected {expected}")]
    Disagreement { route: &'static str, got: usize, expected: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// A nonzero function `F_p → F` supported inside a given set.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportedFunction {
    field: FieldSpec,
    values: BTreeMap<u32, FieldElement>,
}

impl SupportedFunction {
    /// `values[i]` is `f(a[i])`; `f` vanishes off `a`.
    pub fn new(field: &FieldSpec, a: &[u32], values: &[FieldElement]) -> Result<Self, UncertaintyError> {
        assert_eq!(a.len(), values.len());
        let p = field.p() as u32;
        let mut map = BTreeMap::new();
        for (&x, v) in a.iter().zip(values) {
            if x >= p {
                return Err(UncertaintyError::OutsideSupport(x));
            }
            if !field.is_zero(v) {
                map.insert(x, v.clone());
            }
        }
        if map.is_empty() {
            return Err(UncertaintyError::ZeroFunction);
        }
        Ok(SupportedFunction { field: field.clone(), values: map })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self, x: u64) -> FieldElement {
        let x = (x % self.field.p()) as u32;
        self.values.get(&x).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn support(&self) -> Vec<u32> {
        self.values.keys().copied().collect()
    }

    /// The `p × p` matrix of `g ↦ f g`: entry `(i, j)` is `f(i − j)`.
    pub fn tf_matrix(&self) -> Matrix<FieldElement> {
        let p = self.field.p();
        Matrix::from_fn(p as usize, p as usize, |i, j| self.value((i as u64 + p - j as u64) % p))
    }

    /// `f̂(b) = Σ_x ω^{−bx} f(x)` for `b = 0, …, p − 1`.
    pub fn fourier_transform(&self) -> Result<Vec<FieldElement>, UncertaintyError> {
        let w = self.field.root_powers().map_err(SpectralError::from)?;
        let p = self.field.p();
        Ok((0..p)
            .map(|b| {
                self.values.iter().fold(self.field.zero(), |acc, (&x, v)| {
                    let e = (p - b * x as u64 % p) % p;
                    self.field.add(&acc, &self.field.mul(&w[e as usize], v))
                })
            })
            .collect())
    }
}

/// Multiplicity of `1` as a root of `Σ c_i x^i` over `F_q`, coefficients in `[0, q)`.
pub fn root_multiplicity_at_one(coeffs: &[u64], q: u64) -> usize {
    let mut c: Vec<u64> = coeffs.to_vec();
    while c.last() == Some(&0) {
        c.pop();
    }
    assert!(!c.is_empty(), "zero polynomial");
    let mut mu = 0;
    loop {
        // synthetic division by (x − 1)
        let mut quotient = vec![0u64; c.len().saturating_sub(1)];
        let mut carry = 0u64;
        for i in (0..c.len()).rev() {
            carry = (carry + c[i]) % q;
            if i > 0 {
                quotient[i - 1] = carry;
            }
        }
        if carry != 0 {
            return mu;
        }
        mu += 1;
        c = quotient;
    }
}

fn g_coefficients(f: &SupportedFunction) -> Vec<u64> {
    let p = f.field.p();
    let mut g = vec![0u64; p as usize];
    for (&x, v) in &f.values {
        let FieldElement::Modular(r) = v else { unreachable!("characteristic p") };
        g[x as usize] = r[0];
    }
    g
}

/// `rank T_f`. In characteristic `p` this is checked against `p − μ(g)`
/// with `g(x) = Σ f(a) x^a`.
pub fn rank_tf(f: &SupportedFunction) -> Result<usize, UncertaintyError> {
    let r = rank(&f.field, &f.tf_matrix());
    let p = f.field.p();
    if f.field.characteristic() == p {
        let expected = p as usize - root_multiplicity_at_one(&g_coefficients(f), p);
        if r != expected {
            return Err(UncertaintyError::Disagreement { route: "p − μ(g)", got: expected, expected: r });
        }
    }
    Ok(r)
}

/// Exhaustive `min rank T_f` over nonzero `f ∈ F_p^A`, in characteristic `p`.
pub fn uncertainty_exhaustive(p: u64, a: &[u32], budget: u64) -> Result<usize, UncertaintyError> {
    let needed = (p as u128).pow(a.len() as u32);
    if needed > budget as u128 {
        return Err(UncertaintyError::BudgetExceeded { needed, budget });
    }
    let field = FieldSpec::prime_field(p, p).expect("p is prime");
    let mut digits = vec![0u64; a.len()];
    let mut best = p as usize;
    loop {
        let Some(i) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < p) else {
            return Ok(best);
        };
        digits[i] += 1;
        for d in digits[i + 1..].iter_mut() {
            *d = 0;
        }
        let values: Vec<FieldElement> = digits.iter().map(|&d| field.from_int(d as i64)).collect();
        let f = SupportedFunction::new(&field, a, &values)?;
        best = best.min(rank_tf(&f)?);
    }
}

/// Largest `k ≤ p − 1` such that some `β ∈ B_k` has `rank M_β < m`.
///
/// Deficiency passes to subsets of `β`, so level `k + 1` only needs the
/// `β` whose `k`-subsets are all deficient. Every `β` with `k < m` is deficient.
pub fn max_deficient_k(engine: &RankEngine, a: &[u32]) -> usize {
    let p = engine.field().p();
    let m = a.len();
    if m as u64 >= p {
        return p as usize - 1;
    }
    let mut best = m - 1;
    let mut level: Vec<Vec<u32>> = {
        let all: Vec<Vec<u32>> = betas(p, m).collect();
        all.into_par_iter().filter(|b| engine.rank(a, b) < m).collect()
    };
    while let Some(first) = level.first() {
        let k = first.len();
        best = k;
        if k as u64 + 1 >= p {
            break;
        }
        let known: HashSet<&Vec<u32>> = level.iter().collect();
        let mut candidates: Vec<Vec<u32>> = Vec::new();
        for b in &level {
            for x in (b.last().unwrap() + 1)..p as u32 {
                let mut c = b.clone();
                c.push(x);
                let all_faces = (0..c.len() - 1).all(|drop| {
                    let sub: Vec<u32> = c.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                    known.contains(&sub)
                });
                if all_faces {
                    candidates.push(c);
                }
            }
        }
        level = candidates.into_par_iter().filter(|b| engine.rank(a, b) < m).collect();
    }
    best
}

/// `u_F(A)` directly: exhaustive in characteristic `p` (within `budget` on
/// `p^m`), otherwise `p − max { k : some rank M_β < m }`.
pub fn uncertainty_direct(field: &FieldSpec, a: &[u32], budget: Option<u64>) -> Result<usize, UncertaintyError> {
    let p = field.p();
    if field.characteristic() == p {
        return uncertainty_exhaustive(p, a, budget.unwrap_or(DEFAULT_BUDGET));
    }
    let engine = RankEngine::new(field)?;
    Ok(p as usize - max_deficient_k(&engine, a))
}

/// `p − max { k : H_{k−1}(X_{A,k}; F) ≠ 0 }`.
///
/// `X_{A,k}` exists for `2 ≤ k ≤ p − 1`. Below that range the convention is
/// `H̃_0(X_{A,1}) ≠ 0` iff `m ≥ 2` (the vertices are the points of `A`), so an
/// empty range gives `p − 1` for `m ≥ 2` and `p` for `m = 1`.
pub fn uncertainty_via_homology(field: &FieldSpec, a: &[u32]) -> usize {
    let p = field.p();
    let a64: Vec<i64> = a.iter().map(|&x| x as i64).collect();
    let top = (2..p as usize)
        .into_par_iter()
        .filter(|&k| {
            let x = SumComplex::build(p, k, &a64).expect("valid sum complex");
            top_betti(&x, field.characteristic()) > 0
        })
        .max();
    match top {
        Some(k) => p as usize - k,
        None if a.len() >= 2 => p as usize - 1,
        None => p as usize,
    }
}

/// Both routes, required to agree.
pub fn uncertainty(field: &FieldSpec, a: &[u32], budget: Option<u64>) -> Result<usize, UncertaintyError> {
    let direct = uncertainty_direct(field, a, budget)?;
    let via = uncertainty_via_homology(field, a);
    if direct != via {
        return Err(UncertaintyError::Disagreement { route: "homology", got: via, expected: direct });
    }
    Ok(direct)
}

/// Characteristic 0, every nonempty `A ⊆ F_p`: `visit(A, u(A))`.
///
/// When every `|A| × |A|` minor with column set `A` is nonzero, no `β` of
/// size `|A|` is deficient and `u(A) = p − |A| + 1`; otherwise the
/// deficiency search runs for that `A`.
pub fn for_each_characteristic_zero(p: u64, mut visit: impl FnMut(&[u32], usize)) -> Result<(), UncertaintyError> {
    let field = crate::fields::make_field(0, p).map_err(SpectralError::from)?;
    let engine = RankEngine::new(&field)?;
    minors::for_each_column_set(p, |a, all_nonzero| {
        let m = a.len();
        let u = if all_nonzero { p as usize - m + 1 } else { p as usize - max_deficient_k(&engine, a) };
        visit(a, u);
    });
    Ok(())
}

/// Result of checking `μ(g) ≤ m − 1` for polynomials supported on `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrenkelReport {
    pub max_mu: usize,
    pub tested: usize,
    pub exhaustive: bool,
    /// Coefficients (aligned with `A`) of a `g` with `μ(g) = m − 1`.
    pub sharp_witness: Vec<u64>,
}

impl FrenkelReport {
    pub fn holds(&self, m: usize) -> bool {
        self.max_mu < m.max(1)
    }
}

fn mu_on(p: u64, a: &[u32], c: &[u64]) -> usize {
    let mut g = vec![0u64; p as usize];
    for (&x, &v) in a.iter().zip(c) {
        g[x as usize] = v;
    }
    root_multiplicity_at_one(&g, p)
}

/// Checks the bound on `μ(g)` for `g = Σ c_i x^{a_i}` (exhaustively when
/// `p^m ≤ budget`, else on `trials` random samples) and builds a sharp
/// witness from the Hasse-derivative conditions `Σ_i c_i C(a_i, j) = 0`,
/// `j < m − 1`.
pub fn frenkel_check(p: u64, a: &[u32], trials: usize, seed: u64, budget: u64) -> FrenkelReport {
    let m = a.len();
    let field = FieldSpec::prime_field(p, p).expect("p is prime");
    let exhaustive = (p as u128).pow(m as u32) <= budget as u128;
    let mut max_mu = 0;
    let mut tested = 0;
    if exhaustive {
        let mut c = vec![0u64; m];
        while let Some(i) = (0..m).rev().find(|&i| c[i] + 1 < p) {
            c[i] += 1;
            for d in c[i + 1..].iter_mut() {
                *d = 0;
            }
            max_mu = max_mu.max(mu_on(p, a, &c));
            tested += 1;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while tested < trials {
            let c: Vec<u64> = (0..m).map(|_| rng.gen_range(0..p)).collect();
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            max_mu = max_mu.max(mu_on(p, a, &c));
            tested += 1;
        }
    }
    let conditions = Matrix::from_fn(m.saturating_sub(1), m, |j, i| field.from_int(binomial_mod(a[i] as u64, j as u64, p) as i64));
    let sharp_witness = if m == 1 {
        vec![1]
    } else {
        let kernel = kernel_basis(&field, &conditions);
        kernel[0].iter().map(|v| field.as_integer(v).unwrap().try_into().unwrap()).collect()
    };
    FrenkelReport { max_mu, tested, exhaustive, sharp_witness }
}

/// `C(n, j) mod p` for `n < p`.
fn binomial_mod(n: u64, j: u64, p: u64) -> u64 {
    crate::subsets::binomial(n, j).rem_euclid(p as u128) as u64
}

/// [`frenkel_check`] over `sets` random `A` of size `m`: true iff the bound
/// holds everywhere and every witness has `μ = m − 1` exactly.
pub fn frenkel_bound_check(p: u64, m: usize, sets: usize, trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sets).all(|_| {
        let mut a: Vec<u32> = rand::seq::index::sample(&mut rng, p as usize, m).into_iter().map(|x| x as u32).collect();
        a.sort_unstable();
        let r = frenkel_check(p, &a, trials, rng.gen(), DEFAULT_BUDGET);
        r.holds(m) && mu_on(p, &a, &r.sharp_witness) == m - 1
    })
}
