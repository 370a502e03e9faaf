//! Splitting the cyclotomic polynomial `Φ_p` over `F_ℓ` into irreducible factors.
//!
//! For `ℓ ≠ p` every irreducible factor of `Φ_p` has the same degree
//! `d = ord_p(ℓ)`. The distinct-degree step checks this, and a seeded
//! Cantor–Zassenhaus equal-degree split recovers the factors themselves.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{self, ModQ};

/// Multiplicative order of `l` modulo the prime `p` (`l` not divisible by `p`).
pub(crate) fn multiplicative_order(l: u64, p: u64) -> u64 {
    let l = l % p;
    let mut acc = l;
    let mut order = 1;
    while acc != 1 {
        acc = ((acc as u128 * l as u128) % p as u128) as u64;
        order += 1;
    }
    order
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `x^{ℓ^e} mod m` by repeated Frobenius.
fn frobenius_power(f: &ModQ, m: &[u64], e: u64) -> Vec<u64> {
    let mut acc = poly::rem(f, &[0, 1], m);
    for _ in 0..e {
        acc = poly::powmod(f, &acc, f.0, m);
    }
    acc
}

/// Rabin's test: `m` (monic, degree `d`) is irreducible over `F_ℓ`.
pub(crate) fn is_irreducible(f: &ModQ, m: &[u64]) -> bool {
    let Some(d) = poly::degree::<ModQ>(m) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let x = vec![0, 1];
    if poly::sub(f, &frobenius_power(f, m, d as u64), &poly::rem(f, &x, m)).is_empty() {
        for q in prime_factors(d as u64) {
            let h = poly::sub(f, &frobenius_power(f, m, d as u64 / q), &x);
            if poly::gcd(f, &h, m).len() != 1 {
                return false;
            }
        }
        true
    } else {
        false
    }
}

/// Confirms every irreducible factor of `phi` has degree exactly `d`.
fn check_distinct_degree(f: &ModQ, phi: &[u64], d: u64) -> bool {
    let x = vec![0, 1];
    for j in 1..d {
        let h = poly::sub(f, &frobenius_power(f, phi, j), &x);
        if poly::gcd(f, &h, phi).len() != 1 {
            return false;
        }
    }
    poly::sub(f, &frobenius_power(f, phi, d), &poly::rem(f, &x, phi)).is_empty()
}

fn random_poly(f: &ModQ, rng: &mut ChaCha8Rng, below: usize) -> Vec<u64> {
    let v = (0..below).map(|_| rng.gen_range(0..f.0)).collect();
    poly::trim(f, v)
}

/// One Cantor–Zassenhaus attempt at a proper factor of `g`, whose factors all have degree `d`.
fn split_once(f: &ModQ, g: &[u64], d: u64, rng: &mut ChaCha8Rng) -> Option<Vec<u64>> {
    let n = g.len() - 1;
    let a = random_poly(f, rng, n);
    if a.is_empty() {
        return None;
    }
    let h = if f.0 == 2 {
        // trace map a + a^2 + ... + a^{2^{d-1}}
        let mut acc = poly::rem(f, &a, g);
        let mut t = acc.clone();
        for _ in 1..d {
            t = poly::mulmod(f, &t, &t, g);
            acc = poly::add(f, &acc, &t);
        }
        acc
    } else {
        // a^{(ℓ^d − 1)/2} = (a · a^ℓ ⋯ a^{ℓ^{d−1}})^{(ℓ−1)/2}
        let mut norm = poly::rem(f, &a, g);
        let mut t = norm.clone();
        for _ in 1..d {
            t = poly::powmod(f, &t, f.0, g);
            norm = poly::mulmod(f, &norm, &t, g);
        }
        let half = poly::powmod(f, &norm, (f.0 - 1) / 2, g);
        poly::sub(f, &half, &[1])
    };
    let c = poly::gcd(f, &h, g);
    let dc = c.len().saturating_sub(1);
    (dc > 0 && dc < n).then_some(c)
}

/// All monic irreducible factors of `Φ_p` over `F_ℓ`, sorted by coefficient
/// vector (constant term first).
pub(crate) fn cyclotomic_factors(l: u64, p: u64) -> Vec<Vec<u64>> {
    let f = ModQ(l);
    let phi = poly::cyclotomic(&f, p);
    let d = multiplicative_order(l, p);
    assert!(
        check_distinct_degree(&f, &phi, d),
        "Φ_{p} over F_{l} has a factor of degree other than {d}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (l << 32) ^ p);
    let mut pending = vec![phi];
    let mut done = Vec::new();
    while let Some(g) = pending.pop() {
        if g.len() - 1 == d as usize {
            done.push(g);
            continue;
        }
        let c = loop {
            if let Some(c) = split_once(&f, &g, d, &mut rng) {
                break c;
            }
        };
        let (q, r) = poly::divrem(&f, &g, &c);
        debug_assert!(r.is_empty());
        pending.push(poly::monic(&f, &q));
        pending.push(c);
    }
    done.sort();
    done
}

/// The defining polynomial of the extension: the lexicographically smallest
/// irreducible factor of `Φ_p` over `F_ℓ`.
pub(crate) fn defining_polynomial(l: u64, p: u64) -> Vec<u64> {
    let g = cyclotomic_factors(l, p).swap_remove(0);
    debug_assert!(is_irreducible(&ModQ(l), &g));
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_by_loop(l: u64, p: u64) -> u64 {
        (1..p).find(|&j| ModQ(p).pow(l, j) == 1).unwrap()
    }

    #[test]
    fn orders_match_power_loop() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(3, 5), 4);
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for l in [2u64, 3, 5, 7, 11] {
                if l != p {
                    assert_eq!(multiplicative_order(l, p), order_by_loop(l, p));
                }
            }
        }
    }

    #[test]
    fn factors_multiply_back_to_cyclotomic() {
        for (l, p) in [(2u64, 7u64), (2, 17), (3, 11), (3, 13), (5, 11), (2, 31), (7, 19), (3, 5)] {
            let f = ModQ(l);
            let factors = cyclotomic_factors(l, p);
            let d = multiplicative_order(l, p) as usize;
            assert_eq!(factors.len() as u64, (p - 1) / d as u64);
            let mut prod = vec![1u64];
            for g in &factors {
                assert_eq!(g.len() - 1, d);
                assert!(is_irreducible(&f, g));
                prod = poly::mul(&f, &prod, g);
            }
            assert_eq!(prod, poly::cyclotomic(&f, p));
        }
    }

    #[test]
    fn factors_over_f2_for_p7() {
        // x^3 + x + 1 and x^3 + x^2 + 1
        assert_eq!(cyclotomic_factors(2, 7), vec![vec![1, 0, 1, 1], vec![1, 1, 0, 1]]);
        assert_eq!(defining_polynomial(2, 7), vec![1, 0, 1, 1]);
    }

    #[test]
    fn reducible_polynomial_fails_rabin() {
        let f = ModQ(2);
        assert!(!is_irreducible(&f, &[1, 0, 1])); // (x+1)^2
        assert!(is_irreducible(&f, &[1, 1, 1]));
    }
}
