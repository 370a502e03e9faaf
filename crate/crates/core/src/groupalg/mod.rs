//! The group algebra `F[C_p^k]`.
//!
//! An element is a finite map from exponent vectors `γ ∈ F_p^k` to field
//! elements; `x^γ = x_1^{γ_1} ⋯ x_k^{γ_k}` and exponents add modulo `p`.
//! Top chains of a sum complex are identified with skew-symmetric elements,
//! whose basis is `e_γ = Σ_σ sgn(σ) x^{γ∘σ}` over strictly increasing `γ`.

mod gsets;
mod schur;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::complex::{Face, SumComplex};
use crate::fields::{FieldElement, FieldSpec};
use crate::linalg::{rank, rank_over, Matrix};
use crate::subsets::lex;

pub use gsets::{g1, g2, g_sets_equal, precedes, young_blocks, GPair};
pub use schur::{schur_at_ones, schur_element, vandermonde_det, vandermonde_identity_holds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupAlgebraError {
    #[error("elements live in different group algebras")]
    Mismatch,
    #[error("face {0:?} is not a top face of the complex")]
    SupportViolation(Vec<u32>),
    #[error("{0:?} is not strictly increasing")]
    NotIncreasing(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    field: FieldSpec,
    p: u32,
    k: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl GroupAlgebraElement {
    pub fn zero(field: &FieldSpec, k: usize) -> Self {
        GroupAlgebraElement { field: field.clone(), p: field.p() as u32, k, terms: BTreeMap::new() }
    }

    pub fn identity(field: &FieldSpec, k: usize) -> Self {
        Self::monomial(field, &vec![0; k])
    }

    /// `x^γ`, with `γ` reduced modulo `p` (negative exponents allowed).
    pub fn monomial(field: &FieldSpec, gamma: &[i64]) -> Self {
        let mut out = Self::zero(field, gamma.len());
        let g = out.reduce(gamma);
        out.terms.insert(g, field.one());
        out
    }

    /// The generator `x_i` (zero-based `i`).
    pub fn generator(field: &FieldSpec, k: usize, i: usize) -> Self {
        let mut g = vec![0; k];
        g[i] = 1;
        Self::monomial(field, &g)
    }

    pub fn from_terms(field: &FieldSpec, k: usize, terms: impl IntoIterator<Item = (Vec<i64>, FieldElement)>) -> Self {
        let mut out = Self::zero(field, k);
        for (g, c) in terms {
            assert_eq!(g.len(), k);
            let g = out.reduce(&g);
            out.add_term(g, &c);
        }
        out
    }

    fn reduce(&self, gamma: &[i64]) -> Vec<u32> {
        gamma.iter().map(|&g| g.rem_euclid(self.p as i64) as u32).collect()
    }

    fn add_term(&mut self, g: Vec<u32>, c: &FieldElement) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(v) => {
                let sum = self.field.add(v, c);
                if self.field.is_zero(&sum) {
                    self.terms.remove(&g);
                } else {
                    *v = sum;
                }
            }
            None => {
                self.terms.insert(g, c.clone());
            }
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficient(&self, gamma: &[u32]) -> FieldElement {
        self.terms.get(gamma).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<(), GroupAlgebraError> {
        if self.field != other.field || self.k != other.k {
            return Err(GroupAlgebraError::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupAlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupAlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.k);
        for (g, v) in &self.terms {
            out.add_term(g.clone(), &self.field.mul(v, c));
        }
        out
    }

    /// Convolution over `F_p^k`.
    pub fn multiply(&self, other: &Self) -> Result<Self, GroupAlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(&self.field, self.k);
        for (g, u) in &self.terms {
            for (h, v) in &other.terms {
                let e: Vec<u32> = g.iter().zip(h).map(|(a, b)| (a + b) % self.p).collect();
                out.add_term(e, &self.field.mul(u, v));
            }
        }
        Ok(out)
    }

    /// `ρ_d`: the terms with `Σγ_i ≡ d (mod p)`.
    pub fn project_degree(&self, d: i64) -> Self {
        let d = d.rem_euclid(self.p as i64) as u64;
        let mut out = Self::zero(&self.field, self.k);
        out.terms = self
            .terms
            .iter()
            .filter(|(g, _)| g.iter().map(|&x| x as u64).sum::<u64>() % self.p as u64 == d)
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect();
        out
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> FieldElement {
        self.terms.values().fold(self.field.zero(), |acc, c| self.field.add(&acc, c))
    }

    /// Alternating under adjacent transpositions, and zero on exponent
    /// vectors with a repeated entry (required in every characteristic).
    pub fn is_skew(&self) -> bool {
        self.terms.iter().all(|(g, c)| {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
            (0..self.k.saturating_sub(1)).all(|i| {
                let mut h = g.clone();
                h.swap(i, i + 1);
                self.field.is_zero(&self.field.add(c, &self.coefficient(&h)))
            })
        })
    }
}

/// Permutations of `0..k` in lexicographic order with their signs.
pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        out.push((perm.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return out;
        };
        let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// `e_γ = Σ_σ sgn(σ) x^{γ∘σ}` for strictly increasing `γ`.
pub fn skew_basis_element(field: &FieldSpec, gamma: &[u32]) -> Result<GroupAlgebraElement, GroupAlgebraError> {
    if gamma.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GroupAlgebraError::NotIncreasing(gamma.to_vec()));
    }
    let k = gamma.len();
    Ok(GroupAlgebraElement::from_terms(
        field,
        k,
        permutations(k).into_iter().map(|(s, sign)| (s.iter().map(|&i| gamma[i] as i64).collect(), field.from_int(sign))),
    ))
}

/// `D_0(x) = ∏_{i<j} (x_i − x_j)`.
pub fn d_zero(field: &FieldSpec, k: usize) -> GroupAlgebraElement {
    let mut acc = GroupAlgebraElement::identity(field, k);
    for i in 0..k {
        for j in i + 1..k {
            let diff = GroupAlgebraElement::generator(field, k, i).sub(&GroupAlgebraElement::generator(field, k, j)).unwrap();
            acc = acc.multiply(&diff).unwrap();
        }
    }
    acc
}

/// `q(φ) = Σ_σ φ(σ) e_σ` for a top chain given as (face, coefficient) pairs.
pub fn q_map(
    x: &SumComplex,
    field: &FieldSpec,
    chain: &[(Face, FieldElement)],
) -> Result<GroupAlgebraElement, GroupAlgebraError> {
    let mut out = GroupAlgebraElement::zero(field, x.k());
    for (face, c) in chain {
        if x.top_faces().binary_search(face).is_err() {
            return Err(GroupAlgebraError::SupportViolation(face.clone()));
        }
        out = out.add(&skew_basis_element(field, face)?.scale(c))?;
    }
    Ok(out)
}

/// Whether `Σ_{a∈A} x_i^{−a} ρ_a(s) = 0` for every `i`.
pub fn satisfies_h_conditions(s: &GroupAlgebraElement, a: &[u32]) -> bool {
    (0..s.k()).all(|i| {
        let mut acc = GroupAlgebraElement::zero(s.field(), s.k());
        for &ai in a {
            let mut shift = vec![0i64; s.k()];
            shift[i] = -(ai as i64);
            let term = GroupAlgebraElement::monomial(s.field(), &shift).multiply(&s.project_degree(ai as i64)).unwrap();
            acc = acc.add(&term).unwrap();
        }
        acc.is_zero()
    })
}

/// `dim H(A)`: the solutions `s ∈ ⊕_{a∈A} S_a` of `Σ_a x_i^{−a} ρ_a(s) = 0`.
///
/// The unknowns are the coordinates of `s` in the basis `e_γ`; the system
/// has integer coefficients, so its rank is taken over the prime subfield.
pub fn h_of_a_dimension(field: &FieldSpec, k: usize, a: &[u32]) -> usize {
    let p = field.p() as u32;
    let in_a = |g: &[u32]| a.contains(&((g.iter().map(|&v| v as u64).sum::<u64>() % p as u64) as u32));
    let unknowns: Vec<Vec<u32>> = lex(p, k).filter(|g| in_a(g)).collect();
    let mut rows: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, i64)> = Vec::new();
    for (col, gamma) in unknowns.iter().enumerate() {
        let e = skew_basis_element(field, gamma).unwrap();
        let degree = gamma.iter().map(|&v| v as i64).sum::<i64>();
        for i in 0..k {
            let mut shift = vec![0i64; k];
            shift[i] = -degree;
            let shifted = GroupAlgebraElement::monomial(field, &shift).multiply(&e).unwrap();
            for (delta, c) in shifted.terms() {
                let next = rows.len();
                let row = *rows.entry((i, delta.clone())).or_insert(next);
                let v = field.as_integer(c).expect("coefficients lie in the prime subfield");
                entries.push((row, col, i64::try_from(v).unwrap()));
            }
        }
    }
    let mut m = Matrix::filled(rows.len(), unknowns.len(), 0i64);
    for (r, c, v) in entries {
        m[(r, c)] += v;
    }
    unknowns.len() - rank_over(&m, field.characteristic())
}

/// The kernel dimension of multiplication by `D_0` on the skew subspace of
/// `F_p[C_p^k]`.
pub fn d_zero_kernel_on_skew(p: u64, k: usize) -> usize {
    let field = FieldSpec::prime_field(p, p).expect("p is prime");
    let d0 = d_zero(&field, k);
    let images: Vec<GroupAlgebraElement> =
        lex(p as u32, k).map(|g| d0.multiply(&skew_basis_element(&field, &g).unwrap()).unwrap()).collect();
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for img in &images {
        for (g, _) in img.terms() {
            let next = index.len();
            index.entry(g.clone()).or_insert(next);
        }
    }
    let mut m = Matrix::filled(index.len(), images.len(), field.zero());
    for (c, img) in images.iter().enumerate() {
        for (g, v) in img.terms() {
            m[(index[g], c)] = v.clone();
        }
    }
    images.len() - rank(&field, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;
    use crate::homology::top_betti;
    use crate::linalg::kernel_basis;
    use proptest::prelude::*;

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p, p).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let f = fp(7);
        let x1 = GroupAlgebraElement::generator(&f, 2, 0);
        let x2 = GroupAlgebraElement::generator(&f, 2, 1);
        let one = GroupAlgebraElement::identity(&f, 2);
        assert_eq!(one.multiply(&x1).unwrap(), x1);
        let inv = GroupAlgebraElement::monomial(&f, &[6, 0]);
        assert_eq!(x1.multiply(&inv).unwrap(), one);
        let lhs = x1.sub(&x2).unwrap().multiply(&x1.add(&x2).unwrap()).unwrap();
        let rhs = GroupAlgebraElement::from_terms(&f, 2, [(vec![2, 0], f.one()), (vec![0, 2], f.from_int(-1))]);
        assert_eq!(lhs, rhs);
        let other = GroupAlgebraElement::identity(&f, 3);
        assert_eq!(x1.multiply(&other), Err(GroupAlgebraError::Mismatch));
    }

    #[test]
    fn projections() {
        let f = fp(5);
        let x1 = GroupAlgebraElement::generator(&f, 2, 0);
        let x1x2 = GroupAlgebraElement::monomial(&f, &[1, 1]);
        let s = x1.add(&x1x2).unwrap();
        assert_eq!(s.project_degree(1), x1);
        assert_eq!(s.project_degree(2), x1x2);
        assert!(s.project_degree(3).is_zero());
        let one = GroupAlgebraElement::identity(&f, 2);
        assert_eq!(one.project_degree(0), one);
        let total = (0..5).fold(GroupAlgebraElement::zero(&f, 2), |acc, d| acc.add(&s.project_degree(d)).unwrap());
        assert_eq!(total, s);
    }

    #[test]
    fn q_map_examples() {
        let f = fp(5);
        let x = SumComplex::build(5, 2, &[0]).unwrap();
        assert!(q_map(&x, &f, &[]).unwrap().is_zero());
        let single = q_map(&x, &f, &[(vec![1, 4], f.one())]).unwrap();
        let expected = GroupAlgebraElement::from_terms(&f, 2, [(vec![1, 4], f.one()), (vec![4, 1], f.from_int(-1))]);
        assert_eq!(single, expected);
        assert!(single.is_skew());
        assert_eq!(q_map(&x, &f, &[(vec![1, 2], f.one())]), Err(GroupAlgebraError::SupportViolation(vec![1, 2])));
        // the two disjoint edges carry no cycle
        let s = q_map(&x, &f, &[(vec![1, 4], f.one()), (vec![2, 3], f.from_int(-1))]).unwrap();
        assert!(!satisfies_h_conditions(&s, x.residues()));
    }

    #[test]
    fn h_conditions_detect_cycles() {
        for (p, k, a, l) in [(5u64, 2usize, vec![0i64, 1, 2], 5u64), (7, 3, vec![0, 1, 3], 2), (5, 3, vec![0, 1, 2, 3], 5)] {
            let x = SumComplex::build(p, k, &a).unwrap();
            let f = make_field(l, p).unwrap();
            let d = x.boundary_matrix(k - 1).unwrap().map(|&v| f.from_int(v));
            for z in kernel_basis(&f, &d) {
                let chain: Vec<(Face, FieldElement)> = x.top_faces().iter().cloned().zip(z).collect();
                let s = q_map(&x, &f, &chain).unwrap();
                assert!(s.is_skew());
                assert!(satisfies_h_conditions(&s, x.residues()));
            }
            let e = skew_basis_element(&f, &x.top_faces()[0]).unwrap();
            assert!(!satisfies_h_conditions(&e, x.residues()));
        }
    }

    #[test]
    fn h_of_a_examples() {
        assert_eq!(h_of_a_dimension(&fp(7), 3, &[0, 1, 3]), 0);
        assert_eq!(h_of_a_dimension(&fp(5), 2, &[0, 1, 2]), 2);
        let f2 = make_field(2, 5).unwrap();
        let x = SumComplex::build(5, 2, &[0]).unwrap();
        assert_eq!(h_of_a_dimension(&f2, 2, &[0]), top_betti(&x, 2));
        assert_eq!(h_of_a_dimension(&make_field(2, 7).unwrap(), 3, &[0, 1, 3]), 1);
    }

    #[test]
    fn skew_annihilator_is_trivial() {
        for (p, k) in [(5, 2), (7, 2), (5, 3)] {
            assert_eq!(d_zero_kernel_on_skew(p, k), 0);
        }
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms[1], (vec![0, 2, 1], -1));
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i64>(), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn multiplication_is_commutative_and_bilinear(
            l in prop::sample::select(vec![2u64, 5]),
            terms in prop::collection::vec((prop::collection::vec(0i64..5, 2), -3i64..4), 0..6),
            other in prop::collection::vec((prop::collection::vec(0i64..5, 2), -3i64..4), 0..6),
            c in -3i64..4,
        ) {
            let f = make_field(l, 5).unwrap();
            let lift = |t: &Vec<(Vec<i64>, i64)>| {
                GroupAlgebraElement::from_terms(&f, 2, t.iter().map(|(g, v)| (g.clone(), f.from_int(*v))))
            };
            let (s, t) = (lift(&terms), lift(&other));
            prop_assert_eq!(s.multiply(&t).unwrap(), t.multiply(&s).unwrap());
            let lhs = s.scale(&f.from_int(c)).add(&t).unwrap().multiply(&t).unwrap();
            let rhs = s.multiply(&t).unwrap().scale(&f.from_int(c)).add(&t.multiply(&t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn projection_preserves_skewness(
            l in prop::sample::select(vec![2u64, 3, 7]),
            coeffs in prop::collection::vec(-2i64..3, 35),
            d in 0i64..7,
        ) {
            let f = make_field(l, 7).unwrap();
            let s = lex(7, 3).zip(coeffs).fold(GroupAlgebraElement::zero(&f, 3), |acc, (g, c)| {
                acc.add(&skew_basis_element(&f, &g).unwrap().scale(&f.from_int(c))).unwrap()
            });
            prop_assert!(s.is_skew());
            prop_assert!(s.project_degree(d).is_skew());
        }
    }
}
