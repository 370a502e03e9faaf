//! Exact coefficient fields.
//!
//! Three kinds of field are supported, all relative to an ambient prime `p`:
//!
//! * `F_ℓ` itself ([`FieldMode::PrimeField`]); when `ℓ = p` this is the
//!   modular case and no primitive `p`-th root of unity exists.
//! * `F_{ℓ^d} = F_ℓ[x]/(g)` where `g` is an irreducible factor of
//!   `Φ_p = 1 + x + ⋯ + x^{p−1}` and `d` is the order of `ℓ` mod `p`
//!   ([`FieldMode::Extension`]). The class of `x` is a primitive `p`-th root.
//! * `Q(ω_p) = Q[x]/(Φ_p)` with big-rational coefficients
//!   ([`FieldMode::CyclotomicRational`]).
//!
//! A splitting field of `x^p − 1` is all that any computation here needs, so
//! the extension mode stands in for an algebraic closure of `F_ℓ`.
//!
//! Elements are plain coefficient vectors ([`FieldElement`]); all arithmetic
//! goes through the [`FieldSpec`] that owns them.

mod factor;
pub(crate) mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use poly::{ModQ, Scalars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (must be 0 or a prime below 2^32)")]
    BadCharacteristic(u64),
    #[error("F_{0} has no primitive {0}-th root of unity")]
    CharacteristicP(u64),
    #[error("division by zero")]
    DivisionByZero,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldMode {
    PrimeField,
    Extension,
    CyclotomicRational,
}

#[derive(Debug, PartialEq, Eq)]
struct Spec {
    characteristic: u64,
    p: u64,
    mode: FieldMode,
    /// Monic defining polynomial (low degree first); extension mode only.
    modulus: Vec<u64>,
}

/// A computable coefficient field. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec(Arc<Spec>);

/// An element of a [`FieldSpec`]: residues (length 1 or `d`) or rationals
/// (length `p − 1`, reduced modulo `Φ_p`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Modular(Vec<u64>),
    Rational(Vec<BigRational>),
}

/// Builds the field used for coefficients of characteristic `l` around the
/// prime `p`: `F_p` when `l = p`, `Q(ω_p)` when `l = 0`, and otherwise the
/// smallest extension of `F_l` containing a primitive `p`-th root of unity.
pub fn make_field(l: u64, p: u64) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if l == 0 {
        return Ok(FieldSpec::cyclotomic(p));
    }
    if !is_prime(l) {
        return Err(FieldError::NotPrime(l));
    }
    if l >= 1 << 32 {
        return Err(FieldError::BadCharacteristic(l));
    }
    if l == p {
        return FieldSpec::prime_field(l, p);
    }
    let modulus = factor::defining_polynomial(l, p);
    Ok(FieldSpec(Arc::new(Spec { characteristic: l, p, mode: FieldMode::Extension, modulus })))
}

impl FieldSpec {
    /// The prime field `F_l` viewed relative to the ambient prime `p`.
    pub fn prime_field(l: u64, p: u64) -> Result<Self, FieldError> {
        if !is_prime(l) {
            return Err(FieldError::NotPrime(l));
        }
        if l >= 1 << 32 {
            return Err(FieldError::BadCharacteristic(l));
        }
        Ok(FieldSpec(Arc::new(Spec { characteristic: l, p, mode: FieldMode::PrimeField, modulus: Vec::new() })))
    }

    fn cyclotomic(p: u64) -> Self {
        FieldSpec(Arc::new(Spec { characteristic: 0, p, mode: FieldMode::CyclotomicRational, modulus: Vec::new() }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn mode(&self) -> FieldMode {
        self.0.mode
    }

    /// Length of the coefficient vector of an element.
    pub fn degree(&self) -> usize {
        match self.0.mode {
            FieldMode::PrimeField => 1,
            FieldMode::Extension => self.0.modulus.len() - 1,
            FieldMode::CyclotomicRational => self.0.p as usize - 1,
        }
    }

    pub fn defining_polynomial(&self) -> Option<&[u64]> {
        (self.0.mode == FieldMode::Extension).then_some(&self.0.modulus[..])
    }

    /// Does the field contain a primitive `p`-th root of unity?
    pub fn has_root_of_unity(&self) -> bool {
        match self.0.mode {
            FieldMode::PrimeField => self.0.characteristic != self.0.p && (self.0.characteristic - 1) % self.0.p == 0,
            _ => true,
        }
    }

    fn modq(&self) -> ModQ {
        ModQ(self.0.characteristic)
    }

    pub fn zero(&self) -> FieldElement {
        match self.0.mode {
            FieldMode::CyclotomicRational => FieldElement::Rational(vec![BigRational::zero(); self.degree()]),
            _ => FieldElement::Modular(vec![0; self.degree()]),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer.
    pub fn from_int(&self, v: i64) -> FieldElement {
        match self.0.mode {
            FieldMode::CyclotomicRational => {
                let mut c = vec![BigRational::zero(); self.degree()];
                c[0] = BigRational::from_integer(v.into());
                FieldElement::Rational(c)
            }
            _ => {
                let mut c = vec![0; self.degree()];
                c[0] = self.modq().reduce(v);
                FieldElement::Modular(c)
            }
        }
    }

    /// Builds an element from a polynomial in the generator (low degree first),
    /// reducing it modulo the defining polynomial.
    pub fn from_poly(&self, coeffs: &[i64]) -> FieldElement {
        match self.0.mode {
            FieldMode::PrimeField => {
                // The generator is ω when F_l holds one; constants need none.
                let f = self.modq();
                let w = match coeffs.len() {
                    0 | 1 => 0,
                    _ => match self.root_of_unity().expect("prime field without p-th roots") {
                        FieldElement::Modular(v) => v[0],
                        FieldElement::Rational(_) => unreachable!(),
                    },
                };
                let v = coeffs.iter().rev().fold(0, |acc, &c| f.add(&f.mul(&acc, &w), &f.reduce(c)));
                FieldElement::Modular(vec![v])
            }
            FieldMode::Extension => {
                let f = self.modq();
                let a: Vec<u64> = coeffs.iter().map(|&c| f.reduce(c)).collect();
                FieldElement::Modular(self.pad_mod(poly::rem(&f, &poly::trim(&f, a), &self.0.modulus)))
            }
            FieldMode::CyclotomicRational => {
                let p = self.0.p as usize;
                let mut folded = vec![BigRational::zero(); p];
                for (i, &c) in coeffs.iter().enumerate() {
                    folded[i % p] += BigRational::from_integer(c.into());
                }
                FieldElement::Rational(self.reduce_cyclic(folded))
            }
        }
    }

    fn pad_mod(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.degree(), 0);
        v
    }

    /// Folds a length-`p` vector modulo `x^p − 1` onto the `Φ_p` basis.
    fn reduce_cyclic(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let top = c.pop().expect("length p");
        if !top.is_zero() {
            for x in c.iter_mut() {
                *x -= &top;
            }
        }
        c
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Modular(v) => v.iter().all(|&x| x == 0),
            FieldElement::Rational(v) => v.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Modular(x), FieldElement::Modular(y)) => {
                let f = self.modq();
                FieldElement::Modular(x.iter().zip(y).map(|(u, v)| f.add(u, v)).collect())
            }
            (FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match a {
            FieldElement::Modular(x) => {
                let f = self.modq();
                FieldElement::Modular(x.iter().map(|u| f.neg(u)).collect())
            }
            FieldElement::Rational(x) => FieldElement::Rational(x.iter().map(|u| -u).collect()),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (a, b) {
            (FieldElement::Modular(x), FieldElement::Modular(y)) => {
                let f = self.modq();
                FieldElement::Modular(x.iter().zip(y).map(|(u, v)| f.sub(u, v)).collect())
            }
            (FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x.iter().zip(y).map(|(u, v)| u - v).collect())
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self.0.mode, a, b) {
            (FieldMode::PrimeField, FieldElement::Modular(x), FieldElement::Modular(y)) => {
                FieldElement::Modular(vec![self.modq().mul(&x[0], &y[0])])
            }
            (FieldMode::Extension, FieldElement::Modular(x), FieldElement::Modular(y)) => {
                let f = self.modq();
                let prod = poly::mul(&f, &poly::trim(&f, x.clone()), &poly::trim(&f, y.clone()));
                FieldElement::Modular(self.pad_mod(poly::rem(&f, &prod, &self.0.modulus)))
            }
            (FieldMode::CyclotomicRational, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(self.cyclotomic_mul(x, y))
            }
            _ => panic!("element does not belong to this field"),
        }
    }

    fn cyclotomic_mul(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let p = self.0.p as usize;
        let mut acc = vec![BigRational::zero(); p];
        for (i, u) in x.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in y.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                acc[(i + j) % p] += u * v;
            }
        }
        self.reduce_cyclic(acc)
    }

    /// Galois conjugate `ω ↦ ω^j` of a cyclotomic element.
    fn conjugate(&self, x: &[BigRational], j: usize) -> Vec<BigRational> {
        let p = self.0.p as usize;
        let mut acc = vec![BigRational::zero(); p];
        for (i, u) in x.iter().enumerate() {
            acc[(i * j) % p] += u;
        }
        self.reduce_cyclic(acc)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (self.0.mode, a) {
            (FieldMode::PrimeField, FieldElement::Modular(x)) => FieldElement::Modular(vec![self.modq().inv(&x[0])]),
            (FieldMode::Extension, FieldElement::Modular(x)) => {
                let f = self.modq();
                let (g, s) = poly::gcd_ext(&f, &poly::trim(&f, x.clone()), &self.0.modulus);
                debug_assert_eq!(g, vec![1]);
                FieldElement::Modular(self.pad_mod(poly::rem(&f, &s, &self.0.modulus)))
            }
            (FieldMode::CyclotomicRational, FieldElement::Rational(x)) => {
                // a^{-1} = (∏_{j≠1} σ_j(a)) / N(a), with N(a) ∈ Q.
                let p = self.0.p as usize;
                let mut others = self.one_rational();
                for j in 2..p {
                    others = self.cyclotomic_mul(&others, &self.conjugate(x, j));
                }
                let norm = self.cyclotomic_mul(x, &others);
                debug_assert!(norm[1..].iter().all(Zero::is_zero));
                let n = norm[0].clone();
                FieldElement::Rational(others.into_iter().map(|c| c / &n).collect())
            }
            _ => panic!("element does not belong to this field"),
        })
    }

    fn one_rational(&self) -> Vec<BigRational> {
        match self.one() {
            FieldElement::Rational(v) => v,
            _ => unreachable!(),
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// A primitive `p`-th root of unity `ω`.
    pub fn root_of_unity(&self) -> Result<FieldElement, FieldError> {
        let p = self.0.p;
        let w = match self.0.mode {
            FieldMode::PrimeField => {
                if !self.has_root_of_unity() {
                    return Err(FieldError::CharacteristicP(p));
                }
                // Smallest element of exact order p.
                let f = self.modq();
                let l = self.0.characteristic;
                let gen = (2..l)
                    .map(|g| f.pow(g, (l - 1) / p))
                    .find(|&w| w != 1)
                    .expect("F_l^x has an element of order p");
                FieldElement::Modular(vec![gen])
            }
            FieldMode::Extension | FieldMode::CyclotomicRational => self.from_poly(&[0, 1]),
        };
        debug_assert!(!self.is_one(&w) && self.is_one(&self.pow(&w, p)));
        Ok(w)
    }

    /// `[ω^0, ω^1, …, ω^{p−1}]`.
    pub fn root_powers(&self) -> Result<Vec<FieldElement>, FieldError> {
        let w = self.root_of_unity()?;
        let mut out = Vec::with_capacity(self.0.p as usize);
        let mut acc = self.one();
        for _ in 0..self.0.p {
            out.push(acc.clone());
            acc = self.mul(&acc, &w);
        }
        Ok(out)
    }

    pub fn format(&self, a: &FieldElement) -> String {
        let terms: Vec<String> = match a {
            FieldElement::Modular(v) if v.len() == 1 => return v[0].to_string(),
            FieldElement::Modular(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| monomial(&c.to_string(), i))
                .collect(),
            FieldElement::Rational(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| monomial(&c.to_string(), i))
                .collect(),
        };
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Is `a` the image of an integer (no generator terms)?
    pub fn as_integer(&self, a: &FieldElement) -> Option<BigInt> {
        match a {
            FieldElement::Modular(v) => v[1..].iter().all(|&c| c == 0).then(|| BigInt::from(v[0])),
            FieldElement::Rational(v) => {
                (v[1..].iter().all(Zero::is_zero) && v[0].is_integer()).then(|| v[0].to_integer())
            }
        }
    }
}

fn monomial(c: &str, i: usize) -> String {
    match i {
        0 => c.to_string(),
        1 => format!("{c}·w"),
        _ => format!("{c}·w^{i}"),
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.mode {
            FieldMode::PrimeField => write!(f, "F_{}", self.0.characteristic),
            FieldMode::Extension => {
                let d = self.degree();
                let terms: Vec<String> = self
                    .0
                    .modulus
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "x".into(),
                        (1, c) => format!("{c}x"),
                        (i, 1) => format!("x^{i}"),
                        (i, c) => format!("{c}x^{i}"),
                    })
                    .collect();
                write!(f, "F_{}^{} = F_{}[x]/({})", self.0.characteristic, d, self.0.characteristic, terms.join(" + "))
            }
            FieldMode::CyclotomicRational => write!(f, "Q(w_{})", self.0.p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn dispatch_by_characteristic() {
        let f = make_field(2, 7).unwrap();
        assert_eq!(f.mode(), FieldMode::Extension);
        assert_eq!(f.degree(), 3);
        let f = make_field(3, 5).unwrap();
        assert_eq!(f.degree(), 4);
        let f = make_field(0, 5).unwrap();
        assert_eq!(f.mode(), FieldMode::CyclotomicRational);
        assert_eq!(f.degree(), 4);
        let f = make_field(7, 7).unwrap();
        assert_eq!(f.mode(), FieldMode::PrimeField);
    }

    #[test]
    fn rejects_nonprimes() {
        assert_eq!(make_field(4, 7), Err(FieldError::NotPrime(4)));
        assert_eq!(make_field(2, 9), Err(FieldError::NotPrime(9)));
        assert_eq!(make_field(1, 5), Err(FieldError::NotPrime(1)));
    }

    #[test]
    fn no_root_in_characteristic_p() {
        let f = make_field(5, 5).unwrap();
        assert_eq!(f.root_of_unity(), Err(FieldError::CharacteristicP(5)));
    }

    #[test]
    fn roots_have_order_p() {
        for (l, p) in [(0u64, 5u64), (0, 7), (2, 7), (3, 5), (2, 11), (3, 13), (11, 5), (7, 3)] {
            let f = make_field(l, p).unwrap();
            let w = f.root_of_unity().unwrap();
            let powers = f.root_powers().unwrap();
            assert!(f.is_one(&f.pow(&w, p)));
            for j in 1..p as usize {
                assert!(!f.is_one(&powers[j]));
                for i in 1..j {
                    assert_ne!(powers[i], powers[j]);
                }
            }
            let sum = powers.iter().fold(f.zero(), |acc, x| f.add(&acc, x));
            assert!(f.is_zero(&sum), "{f}");
        }
    }

    #[test]
    fn cyclotomic_root_is_class_of_x() {
        let f = make_field(0, 5).unwrap();
        let one = BigRational::one();
        let z = BigRational::zero();
        assert_eq!(f.root_of_unity().unwrap(), FieldElement::Rational(vec![z.clone(), one, z.clone(), z]));
    }

    #[test]
    fn small_inverses() {
        let f = FieldSpec::prime_field(7, 7).unwrap();
        assert_eq!(f.inv(&f.from_int(3)).unwrap(), f.from_int(5));
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert_eq!(f.inv(&f.zero()), Err(FieldError::DivisionByZero));
        let q = make_field(0, 5).unwrap();
        let w = q.root_of_unity().unwrap();
        assert_eq!(q.inv(&w).unwrap(), q.pow(&w, 4));
        let e = make_field(2, 7).unwrap();
        assert_eq!(e.inv(&e.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn cyclotomic_inverse_matches_extended_gcd() {
        use poly::Rationals;
        let q = Rationals;
        for p in [3u64, 5, 7, 11] {
            let f = make_field(0, p).unwrap();
            let phi = poly::cyclotomic(&q, p);
            for coeffs in [vec![1i64, 1], vec![2, 0, -1], vec![0, 3, 1, 1], vec![5, -2, 0, 0, 7]] {
                let a = f.from_poly(&coeffs);
                let FieldElement::Rational(v) = &a else { unreachable!() };
                let (g, s) = poly::gcd_ext(&q, &poly::trim(&q, v.clone()), &phi);
                assert_eq!(g.len(), 1);
                let mut s = s;
                s.resize(p as usize - 1, BigRational::zero());
                assert_eq!(f.inv(&a).unwrap(), FieldElement::Rational(s));
            }
        }
    }

    #[test]
    fn prime_field_with_roots() {
        // 11 ≡ 1 mod 5, so F_11 already holds fifth roots of unity.
        let f = FieldSpec::prime_field(11, 5).unwrap();
        assert!(f.has_root_of_unity());
        let w = f.root_of_unity().unwrap();
        assert!(f.is_one(&f.pow(&w, 5)) && !f.is_one(&w));
        assert!(!FieldSpec::prime_field(2, 5).unwrap().has_root_of_unity());
    }

    #[test]
    fn defining_polynomial_divides_cyclotomic() {
        for (l, p) in [(2u64, 7u64), (3, 5), (2, 11), (3, 11), (2, 13), (5, 13)] {
            let f = make_field(l, p).unwrap();
            let m = ModQ(l);
            let g = f.defining_polynomial().unwrap();
            let (_, r) = poly::divrem(&m, &poly::cyclotomic(&m, p), g);
            assert!(r.is_empty());
        }
    }

    fn element(f: &FieldSpec, coeffs: &[i64]) -> FieldElement {
        f.from_poly(coeffs)
    }

    fn check_axioms(f: &FieldSpec, a: &FieldElement, b: &FieldElement, c: &FieldElement) {
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        assert_eq!(f.sub(&f.add(a, b), b), *a);
        if !f.is_zero(a) {
            assert!(f.is_one(&f.mul(a, &f.inv(a).unwrap())));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn extension_axioms(
            spec in prop::sample::select(vec![(2u64, 7u64), (3, 5), (2, 11), (3, 7), (5, 7)]),
            a in prop::collection::vec(-20i64..20, 0..8),
            b in prop::collection::vec(-20i64..20, 0..8),
            c in prop::collection::vec(-20i64..20, 0..8),
        ) {
            let f = make_field(spec.0, spec.1).unwrap();
            check_axioms(&f, &element(&f, &a), &element(&f, &b), &element(&f, &c));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn cyclotomic_axioms(
            p in prop::sample::select(vec![3u64, 5, 7]),
            a in prop::collection::vec(-5i64..5, 0..7),
            b in prop::collection::vec(-5i64..5, 0..7),
            c in prop::collection::vec(-5i64..5, 0..7),
        ) {
            let f = make_field(0, p).unwrap();
            check_axioms(&f, &element(&f, &a), &element(&f, &b), &element(&f, &c));
        }
    }
}
