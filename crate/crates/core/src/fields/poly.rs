//! Dense univariate polynomials over a coefficient ring, stored low degree first.
//!
//! Only what the field constructions need: the coefficient domain is either
//! `Z/ℓ` (word-sized) or `Q` (big rationals), both fields, so division by a
//! nonzero leading coefficient is always available.

#[cfg(test)]
use num_rational::BigRational;
#[cfg(test)]
use num_traits::{One, Zero};

/// Scalar arithmetic for polynomial coefficients.
pub(crate) trait Scalars {
    type S: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::S;
    fn one(&self) -> Self::S;
    fn is_zero(&self, a: &Self::S) -> bool;
    fn add(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn sub(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn mul(&self, a: &Self::S, b: &Self::S) -> Self::S;
    fn neg(&self, a: &Self::S) -> Self::S;
    /// Inverse of a nonzero scalar.
    fn inv(&self, a: &Self::S) -> Self::S;
}

/// Integers modulo a prime `q < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModQ(pub u64);

impl ModQ {
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Scalars for ModQ {
    type S = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat; q is prime.
        self.pow(*a, self.0 - 2)
    }
}

/// The rational numbers.
#[cfg(test)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Rationals;

#[cfg(test)]
impl Scalars for Rationals {
    type S = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

pub(crate) fn trim<R: Scalars>(r: &R, mut a: Vec<R::S>) -> Vec<R::S> {
    while a.last().is_some_and(|c| r.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree of a trimmed polynomial; `None` for zero.
pub(crate) fn degree<R: Scalars>(a: &[R::S]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn add<R: Scalars>(r: &R, a: &[R::S], b: &[R::S]) -> Vec<R::S> {
    let n = a.len().max(b.len());
    let zero = r.zero();
    let out = (0..n)
        .map(|i| r.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(r, out)
}

pub(crate) fn sub<R: Scalars>(r: &R, a: &[R::S], b: &[R::S]) -> Vec<R::S> {
    let n = a.len().max(b.len());
    let zero = r.zero();
    let out = (0..n)
        .map(|i| r.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(r, out)
}

pub(crate) fn mul<R: Scalars>(r: &R, a: &[R::S], b: &[R::S]) -> Vec<R::S> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![r.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = r.mul(x, y);
            out[i + j] = r.add(&out[i + j], &t);
        }
    }
    trim(r, out)
}

pub(crate) fn scale<R: Scalars>(r: &R, a: &[R::S], c: &R::S) -> Vec<R::S> {
    trim(r, a.iter().map(|x| r.mul(x, c)).collect())
}

/// Quotient and remainder; `b` must be nonzero and trimmed.
pub(crate) fn divrem<R: Scalars>(r: &R, a: &[R::S], b: &[R::S]) -> (Vec<R::S>, Vec<R::S>) {
    let db = degree::<R>(b).expect("division by the zero polynomial");
    let lead_inv = r.inv(&b[db]);
    let mut rem: Vec<R::S> = trim(r, a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![r.zero(); rem.len() - db];
    while let Some(dr) = degree::<R>(&rem) {
        if dr < db {
            break;
        }
        let c = r.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            let t = r.mul(&c, bj);
            rem[shift + j] = r.sub(&rem[shift + j], &t);
        }
        quot[shift] = c;
        rem = trim(r, rem);
    }
    (trim(r, quot), rem)
}

pub(crate) fn rem<R: Scalars>(r: &R, a: &[R::S], b: &[R::S]) -> Vec<R::S> {
    divrem(r, a, b).1
}

pub(crate) fn monic<R: Scalars>(r: &R, a: &[R::S]) -> Vec<R::S> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = r.inv(lead);
            scale(r, a, &inv)
        }
    }
}

/// Monic gcd.
pub(crate) fn gcd<R: Scalars>(r: &R, a: &[R::S], b: &[R::S]) -> Vec<R::S> {
    let mut x = trim(r, a.to_vec());
    let mut y = trim(r, b.to_vec());
    while !y.is_empty() {
        let t = rem(r, &x, &y);
        x = y;
        y = t;
    }
    monic(r, &x)
}

/// Extended Euclid: returns `(g, s)` with `g` monic and `s·a ≡ g (mod b)`.
pub(crate) fn gcd_ext<R: Scalars>(r: &R, a: &[R::S], b: &[R::S]) -> (Vec<R::S>, Vec<R::S>) {
    let mut old_r = trim(r, a.to_vec());
    let mut cur_r = trim(r, b.to_vec());
    let mut old_s = vec![r.one()];
    let mut cur_s: Vec<R::S> = Vec::new();
    while !cur_r.is_empty() {
        let (q, rr) = divrem(r, &old_r, &cur_r);
        let next_s = sub(r, &old_s, &mul(r, &q, &cur_s));
        old_r = std::mem::replace(&mut cur_r, rr);
        old_s = std::mem::replace(&mut cur_s, next_s);
    }
    match old_r.last() {
        None => (Vec::new(), Vec::new()),
        Some(lead) => {
            let inv = r.inv(lead);
            (scale(r, &old_r, &inv), scale(r, &old_s, &inv))
        }
    }
}

pub(crate) fn mulmod<R: Scalars>(r: &R, a: &[R::S], b: &[R::S], m: &[R::S]) -> Vec<R::S> {
    rem(r, &mul(r, a, b), m)
}

/// `a^e mod m`.
pub(crate) fn powmod<R: Scalars>(r: &R, a: &[R::S], mut e: u64, m: &[R::S]) -> Vec<R::S> {
    let mut acc = rem(r, &[r.one()], m);
    let mut base = rem(r, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(r, &acc, &base, m);
        }
        base = mulmod(r, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// The cyclotomic polynomial `1 + x + ⋯ + x^{p−1}`.
pub(crate) fn cyclotomic<R: Scalars>(r: &R, p: u64) -> Vec<R::S> {
    vec![r.one(); p as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs_dividend() {
        let f = ModQ(7);
        let a = vec![3, 0, 5, 1, 6];
        let b = vec![2, 1, 1];
        let (q, rr) = divrem(&f, &a, &b);
        assert!(rr.len() < b.len());
        assert_eq!(add(&f, &mul(&f, &q, &b), &rr), a);
    }

    #[test]
    fn gcd_ext_inverts_mod_irreducible() {
        let f = ModQ(2);
        // x^3 + x + 1 is irreducible over F_2.
        let m = vec![1, 1, 0, 1];
        let a = vec![0, 1, 1];
        let (g, s) = gcd_ext(&f, &a, &m);
        assert_eq!(g, vec![1]);
        assert_eq!(mulmod(&f, &s, &a, &m), vec![1]);
    }

    #[test]
    fn rational_gcd_of_cyclotomic_and_x_minus_one() {
        let q = Rationals;
        let phi = cyclotomic(&q, 5);
        let xm1 = vec![BigRational::from_integer((-1).into()), BigRational::one()];
        assert_eq!(gcd(&q, &phi, &xm1), vec![BigRational::one()]);
    }
}
