//! Named cross-check suites. Each suite sweeps a grid of instances, compares
//! two independent computations per instance, and stops at the first
//! disagreement.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::SumComplex;
use crate::fields::{is_prime, make_field, FieldSpec};
use crate::groupalg::{d_zero_kernel_on_skew, g_sets_equal, h_of_a_dimension, schur_at_ones, vandermonde_identity_holds};
use crate::homology::{betti_in_characteristic, top_betti, torsion};
use crate::spectral::{betas, chebotarev_check, dim_h_char_p, dim_h_semisimple, dim_r};
use crate::subsets::{binomial, subsets_with_sizes};
use crate::uncertainty::{
    for_each_characteristic_zero, frenkel_bound_check, frenkel_check, uncertainty, uncertainty_exhaustive,
    uncertainty_via_homology, DEFAULT_BUDGET,
};

pub const SUITES: &[&str] = &[
    "theorem2",
    "theorem1",
    "rational",
    "chebotarev",
    "vandermonde",
    "schur",
    "annihilator",
    "gsets",
    "claim21",
    "dimr",
    "tao",
    "uncertainty-charp",
    "frenkel",
    "rp2",
];

/// The first failing instance of a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub p: u64,
    pub k: Option<usize>,
    pub a: Vec<u32>,
    pub field: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub checks: usize,
    pub counterexample: Option<Counterexample>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Overrides for a suite's default grid.
#[derive(Clone, Debug, Default)]
pub struct VerifyParams {
    pub primes: Option<Vec<u64>>,
    pub ks: Option<Vec<usize>>,
    pub chars: Option<Vec<u64>>,
    pub seed: u64,
}

struct Tally {
    suite: &'static str,
    checks: usize,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Tally { suite, checks: 0, counterexample: None }
    }

    /// Records one comparison; returns false once a failure is recorded.
    fn check(&mut self, ok: bool, fail: impl FnOnce() -> Counterexample) -> bool {
        self.checks += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(fail());
        }
        self.counterexample.is_none()
    }

    fn done(self) -> SuiteOutcome {
        SuiteOutcome { suite: self.suite.to_string(), checks: self.checks, counterexample: self.counterexample }
    }
}

fn cx(p: u64, k: Option<usize>, a: &[u32], field: &str, detail: String) -> Counterexample {
    Counterexample { p, k, a: a.to_vec(), field: field.to_string(), detail }
}

fn ints(a: &[u32]) -> Vec<i64> {
    a.iter().map(|&x| x as i64).collect()
}

/// `(k − m) C(p−1, k−1) / k` when `m ≤ k`, else 0: `dim H̃_{k−2}` over `F_p`.
pub fn dim_h_below_top(p: u64, k: usize, m: usize) -> usize {
    if m > k {
        return 0;
    }
    let num = (k - m) as u128 * binomial(p - 1, k as u64 - 1);
    assert_eq!(num % k as u128, 0);
    (num / k as u128) as usize
}

fn grid(params: &VerifyParams, primes: &[u64], ks: &[usize]) -> Vec<(u64, usize)> {
    let primes = params.primes.clone().unwrap_or_else(|| primes.to_vec());
    let ks = params.ks.clone().unwrap_or_else(|| ks.to_vec());
    primes
        .iter()
        .flat_map(|&p| ks.iter().map(move |&k| (p, k)))
        .filter(|&(p, k)| is_prime(p) && k >= 2 && (k as u64) < p)
        .collect()
}

fn residue_sets(p: u64, max_m: usize) -> Vec<Vec<u32>> {
    subsets_with_sizes(p as u32, 1..=max_m.min(p as usize))
}

pub fn theorem2(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("theorem2");
    'outer: for (p, k) in grid(params, &[5, 7, 11], &[2, 3]) {
        for a in residue_sets(p, 5) {
            let x = SumComplex::build(p, k, &ints(&a)).unwrap();
            let b = betti_in_characteristic(&x, p);
            let (top, below) = (dim_h_char_p(p, k, a.len()), dim_h_below_top(p, k, a.len()));
            let ok = b[k - 1] == top && b[k - 2] == below && b[..k - 2].iter().all(|&v| v == 0);
            if !t.check(ok, || cx(p, Some(k), &a, &format!("F_{p}"), format!("betti {b:?}, closed forms top {top}, below {below}"))) {
                break 'outer;
            }
        }
    }
    t.done()
}

pub fn theorem1(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("theorem1");
    let chars = params.chars.clone().unwrap_or_else(|| vec![2, 3]);
    'outer: for (p, k) in grid(params, &[5, 7, 11], &[2, 3]) {
        for &l in chars.iter().filter(|&&l| l != p) {
            let Ok(field) = make_field(l, p) else { continue };
            for a in residue_sets(p, 4) {
                let x = SumComplex::build(p, k, &ints(&a)).unwrap();
                let h = top_betti(&x, l);
                let formula = dim_h_semisimple(&field, p, k, &a);
                if !t.check(formula == Ok(h), || cx(p, Some(k), &a, &field.to_string(), format!("homology {h}, formula {formula:?}"))) {
                    break 'outer;
                }
            }
        }
    }
    t.done()
}

pub fn rational(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("rational");
    'outer: for (p, k) in grid(params, &[5, 7, 11], &[2, 3]) {
        for a in residue_sets(p, 5) {
            let x = SumComplex::build(p, k, &ints(&a)).unwrap();
            let b = betti_in_characteristic(&x, 0);
            let ok = b[k - 1] == dim_h_char_p(p, k, a.len()) && b[k - 2] == dim_h_below_top(p, k, a.len());
            if !t.check(ok, || cx(p, Some(k), &a, "Q", format!("betti {b:?}"))) {
                break 'outer;
            }
        }
    }
    t.done()
}

/// All `k`-subsets when `p ≤ 7`, otherwise `samples` random ones.
pub fn chebotarev_family(p: u64, k: usize, samples: usize, seed: u64) -> Vec<Vec<u32>> {
    if p <= 7 {
        return betas(p, k).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 8) ^ k as u64);
    (0..samples)
        .map(|_| {
            let mut a: Vec<u32> = sample(&mut rng, p as usize, k).into_iter().map(|x| x as u32).collect();
            a.sort_unstable();
            a
        })
        .collect()
}

pub fn chebotarev(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("chebotarev");
    let primes = params.primes.clone().unwrap_or_else(|| vec![5, 7, 11, 13]);
    let ks = params.ks.clone().unwrap_or_else(|| vec![2, 3, 4]);
    'outer: for &p in &primes {
        let Ok(field) = make_field(0, p) else { continue };
        for &k in ks.iter().filter(|&&k| k >= 1 && (k as u64) < p) {
            let family = chebotarev_family(p, k, 50, params.seed);
            let result = chebotarev_check(&field, k, &family);
            t.checks += family.len() * binomial(p, k as u64) as usize - 1;
            let ok = matches!(result, Ok(None));
            let a = match &result {
                Ok(Some(d)) => d.a.clone(),
                _ => Vec::new(),
            };
            if !t.check(ok, || cx(p, Some(k), &a, "Q(w)", format!("{result:?}"))) {
                break 'outer;
            }
        }
    }
    t.done()
}

pub fn vandermonde(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("vandermonde");
    let primes = params.primes.clone().unwrap_or_else(|| vec![2, 3, 5, 7]);
    let ks = params.ks.clone().unwrap_or_else(|| vec![1, 2, 3]);
    'outer: for &p in primes.iter().filter(|&&p| is_prime(p)) {
        for &k in ks.iter().filter(|&&k| k >= 1 && k as u64 <= p) {
            for beta in betas(p, k) {
                if !t.check(vandermonde_identity_holds(p, &beta), || cx(p, Some(k), &beta, &format!("F_{p}"), "det N_β ≠ s_λ·D_0".into())) {
                    break 'outer;
                }
            }
        }
    }
    t.done()
}

pub fn schur(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("schur");
    let primes = params.primes.clone().unwrap_or_else(|| vec![2, 3, 5, 7, 11, 13]);
    let ks = params.ks.clone().unwrap_or_else(|| vec![1, 2, 3, 4]);
    'outer: for &p in primes.iter().filter(|&&p| is_prime(p)) {
        for &k in ks.iter().filter(|&&k| k >= 1 && k as u64 <= p) {
            for beta in betas(p, k) {
                let v = schur_at_ones(p, &beta);
                if !t.check(v != 0, || cx(p, Some(k), &beta, &format!("F_{p}"), "s_λ(1,…,1) ≡ 0".into())) {
                    break 'outer;
                }
            }
        }
    }
    t.done()
}

pub fn annihilator(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("annihilator");
    let pairs = match (&params.primes, &params.ks) {
        (None, None) => vec![(5, 2), (7, 2), (5, 3)],
        _ => grid(params, &[5, 7], &[2, 3]),
    };
    for (p, k) in pairs {
        let dim = d_zero_kernel_on_skew(p, k);
        if !t.check(dim == 0, || cx(p, Some(k), &[], &format!("F_{p}"), format!("kernel dimension {dim}"))) {
            break;
        }
    }
    t.done()
}

/// Every strictly increasing `α` with entries `≤ max_entry` and `1 ≤ k ≤ max_k`.
pub fn gsets_with(max_entry: u32, max_k: usize) -> SuiteOutcome {
    let mut t = Tally::new("gsets");
    for alpha in subsets_with_sizes(max_entry + 1, 1..=max_k) {
        let ok = g_sets_equal(&alpha, None) == Ok(true);
        if !t.check(ok, || cx(0, Some(alpha.len()), &alpha, "-", "G₁(α) ≠ G₂(α)".into())) {
            break;
        }
    }
    t.done()
}

pub fn gsets(params: &VerifyParams) -> SuiteOutcome {
    let max_k = params.ks.as_ref().and_then(|v| v.iter().max().copied()).unwrap_or(4);
    gsets_with(8, max_k)
}

fn semisimple_fields(params: &VerifyParams, p: u64) -> Vec<FieldSpec> {
    let chars = params.chars.clone().unwrap_or_else(|| vec![0, 2]);
    chars.into_iter().filter(|&l| l != p).filter_map(|l| make_field(l, p).ok()).collect()
}

pub fn claim21(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("claim21");
    'outer: for (p, k) in grid(params, &[5, 7], &[2, 3]) {
        let mut fields = semisimple_fields(params, p);
        fields.push(make_field(p, p).unwrap());
        for field in fields {
            for a in residue_sets(p, 4) {
                let x = SumComplex::build(p, k, &ints(&a)).unwrap();
                let (h, b) = (h_of_a_dimension(&field, k, &a), top_betti(&x, field.characteristic()));
                if !t.check(h == b, || cx(p, Some(k), &a, &field.to_string(), format!("dim H(A) {h}, betti {b}"))) {
                    break 'outer;
                }
            }
        }
    }
    t.done()
}

pub fn dimr(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("dimr");
    'outer: for (p, k) in grid(params, &[5, 7], &[2, 3]) {
        for field in semisimple_fields(params, p) {
            for a in residue_sets(p, 4) {
                let x = SumComplex::build(p, k, &ints(&a)).unwrap();
                let b = top_betti(&x, field.characteristic());
                let r = dim_r(&field, p, k, &a);
                if !t.check(r == Ok(p as u128 * b as u128), || cx(p, Some(k), &a, &field.to_string(), format!("dim R {r:?}, betti {b}"))) {
                    break 'outer;
                }
            }
        }
    }
    t.done()
}

/// Characteristic 0: `u(A) = p − |A| + 1` for every nonempty `A`; the
/// homology route is compared as well for `p ≤ homology_limit`.
pub fn tao_with(primes: &[u64], homology_limit: u64) -> SuiteOutcome {
    let mut t = Tally::new("tao");
    for &p in primes.iter().filter(|&&p| is_prime(p)) {
        let q = make_field(0, p).unwrap();
        let mut failure = None;
        let mut count = 0;
        for_each_characteristic_zero(p, |a, u| {
            count += 1;
            let mut ok = u == p as usize - a.len() + 1;
            if ok && p <= homology_limit {
                ok = uncertainty_via_homology(&q, a) == u;
            }
            if !ok && failure.is_none() {
                failure = Some(cx(p, None, a, "Q(w)", format!("u = {u}")));
            }
        })
        .unwrap();
        t.checks += count - 1;
        if !t.check(failure.is_none(), || failure.unwrap()) {
            break;
        }
    }
    t.done()
}

pub fn tao(params: &VerifyParams) -> SuiteOutcome {
    tao_with(&params.primes.clone().unwrap_or_else(|| vec![2, 3, 5, 7, 11]), 7)
}

pub fn uncertainty_charp(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("uncertainty-charp");
    let primes = params.primes.clone().unwrap_or_else(|| vec![3, 5, 7]);
    'outer: for &p in primes.iter().filter(|&&p| is_prime(p)) {
        let fp = make_field(p, p).unwrap();
        for a in residue_sets(p, 3) {
            let m = a.len();
            let direct = uncertainty_exhaustive(p, &a, DEFAULT_BUDGET);
            let via = uncertainty_via_homology(&fp, &a);
            let mu = frenkel_check(p, &a, 0, 0, DEFAULT_BUDGET).max_mu;
            let expected = p as usize - m + 1;
            let ok = direct == Ok(expected) && via == expected && p as usize - mu == expected;
            if !t.check(ok, || cx(p, None, &a, &fp.to_string(), format!("direct {direct:?}, homology {via}, p − max μ {}", p as usize - mu))) {
                break 'outer;
            }
        }
    }
    t.done()
}

pub fn frenkel(params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("frenkel");
    let primes = params.primes.clone().unwrap_or_else(|| vec![5, 7, 11, 13]);
    'outer: for &p in primes.iter().filter(|&&p| is_prime(p)) {
        for m in 1..=4.min(p as usize - 1) {
            let ok = frenkel_bound_check(p, m, 6, 500, params.seed ^ p ^ (m as u64) << 16);
            if !t.check(ok, || cx(p, None, &[], &format!("F_{p}"), format!("bound or sharpness fails for m = {m}"))) {
                break 'outer;
            }
        }
    }
    t.done()
}

/// The projective-plane instance `p = 7, k = 3, A = {0, 1, 3}`.
pub fn rp2(_params: &VerifyParams) -> SuiteOutcome {
    let mut t = Tally::new("rp2");
    let a = [0u32, 1, 3];
    let x = SumComplex::build(7, 3, &[0, 1, 3]).unwrap();
    let fail = |detail: &str| cx(7, Some(3), &a, "-", detail.to_string());
    let tors = torsion(&x).map(|h| h.torsion_divisors);
    t.check(tors == Ok(vec![2.into()]), || fail(&format!("torsion {tors:?}")));
    let b2 = betti_in_characteristic(&x, 2);
    t.check(b2 == vec![0, 1, 1], || fail(&format!("F_2 betti {b2:?}")));
    for l in [7u64, 0] {
        let b = betti_in_characteristic(&x, l);
        t.check(b == vec![0, 0, 0], || fail(&format!("char {l} betti {b:?}")));
    }
    t.check(x.top_count() == 15, || fail("f_2 ≠ 15"));
    t.check(x.reduced_euler_characteristic() == 0, || fail("χ̃ ≠ 0"));
    let u = uncertainty(&make_field(2, 7).unwrap(), &a, None);
    t.check(u == Ok(4), || fail(&format!("char-2 uncertainty {u:?}")));
    t.done()
}

pub fn run_suite(name: &str, params: &VerifyParams) -> Option<SuiteOutcome> {
    Some(match name {
        "theorem2" => theorem2(params),
        "theorem1" => theorem1(params),
        "rational" => rational(params),
        "chebotarev" => chebotarev(params),
        "vandermonde" => vandermonde(params),
        "schur" => schur(params),
        "annihilator" => annihilator(params),
        "gsets" => gsets(params),
        "claim21" => claim21(params),
        "dimr" => dimr(params),
        "tao" => tao(params),
        "uncertainty-charp" => uncertainty_charp(params),
        "frenkel" => frenkel(params),
        "rp2" => rp2(params),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(primes: &[u64], ks: &[usize]) -> VerifyParams {
        VerifyParams { primes: Some(primes.to_vec()), ks: Some(ks.to_vec()), chars: None, seed: 1 }
    }

    #[test]
    fn suites_pass_on_small_grids() {
        for name in SUITES {
            let params = match *name {
                "gsets" => small(&[], &[3]),
                "annihilator" => VerifyParams::default(),
                "frenkel" | "tao" | "uncertainty-charp" | "rp2" => small(&[5, 7], &[]),
                "vandermonde" | "schur" => small(&[5], &[2, 3]),
                _ => small(&[5], &[2, 3]),
            };
            let out = run_suite(name, &params).unwrap();
            assert!(out.passed(), "{out:?}");
            assert!(out.checks > 0, "{name}");
        }
        assert!(run_suite("nope", &VerifyParams::default()).is_none());
    }

    #[test]
    fn eq3_values() {
        // m = k: both sides vanish; m = 1, k = 3, p = 7: (2/3)·C(6,2) = 10
        assert_eq!(dim_h_below_top(7, 3, 3), 0);
        assert_eq!(dim_h_below_top(7, 3, 1), 10);
        assert_eq!(dim_h_below_top(7, 3, 4), 0);
    }

    #[test]
    fn counterexample_is_reported() {
        let mut t = Tally::new("demo");
        assert!(t.check(true, || unreachable!()));
        assert!(!t.check(false, || cx(5, Some(2), &[1], "F_5", "boom".into())));
        let out = t.done();
        assert_eq!(out.checks, 2);
        assert_eq!(out.counterexample.unwrap().detail, "boom");
    }
}
