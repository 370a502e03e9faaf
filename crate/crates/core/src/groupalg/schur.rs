//! Generalized Vandermonde determinants and Schur polynomials.
//!
//! `det(x_i^{−b_j})` is computed directly in `F_p[C_p^k]`. The Schur factor is
//! computed upstream in `Z[ξ_1, …, ξ_k]`: `D_λ = det(ξ_i^{p−b_j})` is divided
//! exactly by every `ξ_i − ξ_j`, and only the quotient is reduced (exponents
//! and coefficients mod `p`).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{d_zero, permutations, GroupAlgebraElement};
use crate::fields::FieldSpec;

type ZPoly = BTreeMap<Vec<u32>, i64>;

fn add_term(p: &mut ZPoly, e: Vec<u32>, c: i64) {
    let v = p.entry(e.clone()).or_insert(0);
    *v = v.checked_add(c).expect("coefficient overflow");
    if *v == 0 {
        p.remove(&e);
    }
}

/// Exact quotient of `f` by `ξ_i − ξ_j`. Writing `f = Σ_d ξ_i^d c_d`, the
/// quotient digits satisfy `q_{d−1} = c_d + ξ_j q_d`, and `c_0 + ξ_j q_0` must vanish.
fn divide_linear(f: &ZPoly, i: usize, j: usize) -> ZPoly {
    let mut by_degree: BTreeMap<u32, ZPoly> = BTreeMap::new();
    for (e, &c) in f {
        let mut rest = e.clone();
        let d = std::mem::replace(&mut rest[i], 0);
        add_term(by_degree.entry(d).or_default(), rest, c);
    }
    let top = by_degree.keys().next_back().copied().unwrap_or(0);
    let shift_j = |q: &ZPoly| -> ZPoly {
        q.iter()
            .map(|(e, &c)| {
                let mut e = e.clone();
                e[j] += 1;
                (e, c)
            })
            .collect()
    };
    let mut quotient = ZPoly::new();
    let mut q = ZPoly::new();
    for d in (1..=top).rev() {
        let mut next = shift_j(&q);
        for (e, &c) in by_degree.get(&d).into_iter().flatten() {
            add_term(&mut next, e.clone(), c);
        }
        for (e, &c) in &next {
            let mut e = e.clone();
            e[i] = d - 1;
            add_term(&mut quotient, e, c);
        }
        q = next;
    }
    let mut remainder = shift_j(&q);
    for (e, &c) in by_degree.get(&0).into_iter().flatten() {
        add_term(&mut remainder, e.clone(), c);
    }
    assert!(remainder.is_empty(), "division by ξ_{i} − ξ_{j} is not exact");
    quotient
}

fn check_beta(p: u64, beta: &[u32]) {
    assert!(beta.windows(2).all(|w| w[0] < w[1]), "β must be strictly increasing");
    assert!(beta.iter().all(|&b| (b as u64) < p), "β entries must lie below p");
}

/// `det N_β`, `N_β(i, j) = x_i^{−b_j}`, by the Leibniz formula in `F_p[C_p^k]`.
pub fn vandermonde_det(p: u64, beta: &[u32]) -> GroupAlgebraElement {
    check_beta(p, beta);
    let field = FieldSpec::prime_field(p, p).expect("p is prime");
    let k = beta.len();
    GroupAlgebraElement::from_terms(
        &field,
        k,
        permutations(k).into_iter().map(|(s, sign)| {
            let gamma: Vec<i64> = (0..k).map(|i| -(beta[s[i]] as i64)).collect();
            (gamma, field.from_int(sign))
        }),
    )
}

/// `s_λ(x)` with `λ_j + k − j = p − b_j`, reduced into `F_p[C_p^k]`.
pub fn schur_element(p: u64, beta: &[u32]) -> GroupAlgebraElement {
    check_beta(p, beta);
    let k = beta.len();
    let mut f = ZPoly::new();
    for (s, sign) in permutations(k) {
        let e: Vec<u32> = (0..k).map(|i| p as u32 - beta[s[i]]).collect();
        add_term(&mut f, e, sign);
    }
    for i in 0..k {
        for j in i + 1..k {
            f = divide_linear(&f, i, j);
        }
    }
    let field = FieldSpec::prime_field(p, p).expect("p is prime");
    GroupAlgebraElement::from_terms(
        &field,
        k,
        f.into_iter().map(|(e, c)| (e.into_iter().map(i64::from).collect(), field.from_int(c.rem_euclid(p as i64)))),
    )
}

/// Whether `det N_β = s_λ(x) · D_0(x)` holds coefficient by coefficient.
pub fn vandermonde_identity_holds(p: u64, beta: &[u32]) -> bool {
    let lhs = vandermonde_det(p, beta);
    let s = schur_element(p, beta);
    let rhs = s.multiply(&d_zero(s.field(), beta.len())).unwrap();
    lhs == rhs
}

/// `s_λ(1, …, 1) = ∏_{i<j} (b_j − b_i)/(j − i)`, evaluated exactly and reduced mod `p`.
pub fn schur_at_ones(p: u64, beta: &[u32]) -> u64 {
    check_beta(p, beta);
    let k = beta.len();
    let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
    for i in 0..k {
        for j in i + 1..k {
            num *= beta[j] - beta[i];
            den *= j - i;
        }
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "dimension of a Schur module is an integer");
    q.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}
