use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sumcomplex::complex::SumComplex;
use sumcomplex::fields::{is_prime, make_field, FieldSpec};
use sumcomplex::homology::betti_in_characteristic;
use sumcomplex::scan::{scan_instance, ScanError, ScanRecord};
use sumcomplex::spectral::{dim_h_char_p, dim_h_semisimple};
use sumcomplex::uncertainty::{uncertainty, UncertaintyError};
use sumcomplex::verify::{dim_h_below_top, run_suite, SuiteOutcome, VerifyParams, SUITES};

use crate::render::Report;

/// Everything that ends a run with a nonzero status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    /// Two computations that must agree did not; the report is still printed.
    Disagreement(String),
    Budget(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Disagreement(_) => 3,
            Failure::Budget(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Disagreement(m) | Failure::Budget(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// A comma list of integers with inclusive ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<u64>);

impl IntList {
    pub fn parse(s: &str) -> Result<Self, String> {
        parse_int_list(s).map(IntList)
    }
}

/// Parses `5,7,11`, `11..31` (inclusive) or a mix such as `5,11..=19`.
pub fn parse_int_list(s: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let lo: u64 = lo.parse().map_err(|_| format!("bad range start in `{part}`"))?;
            let hi: u64 = hi.parse().map_err(|_| format!("bad range end in `{part}`"))?;
            if lo > hi {
                return Err(format!("empty range `{part}`"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| format!("not an integer: `{part}`"))?);
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn build(p: u64, k: usize, a: &[i64]) -> Result<SumComplex, Failure> {
    SumComplex::build(p, k, a).map_err(usage)
}

fn field_for(char: u64, p: u64) -> Result<FieldSpec, Failure> {
    make_field(char, p).map_err(usage)
}

fn dump(x: &SumComplex, path: Option<&Path>) -> Result<(), Failure> {
    if let Some(path) = path {
        std::fs::write(path, x.dump_faces()).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BettiReport {
    pub p: u64,
    pub k: usize,
    pub a: Vec<u32>,
    pub field: String,
    pub characteristic: u64,
    pub f_vector: Vec<String>,
    pub reduced_betti: Vec<usize>,
    pub euler_characteristic: i64,
    /// `"closed form"` in characteristic `p`, `"rank sum"` otherwise.
    pub formula: String,
    pub formula_top: usize,
    /// `dim H̃_{k−2}` from its closed form; only defined in characteristic `p`.
    pub formula_below_top: Option<usize>,
    pub agreement: bool,
}

impl Report for BettiReport {}

pub fn betti(p: u64, k: usize, a: &[i64], char: u64, dump_to: Option<&Path>) -> Result<BettiReport, Failure> {
    let x = build(p, k, a)?;
    let field = field_for(char, p)?;
    dump(&x, dump_to)?;
    let b = betti_in_characteristic(&x, char);
    let m = x.m();
    let (formula, top, below) = if char == p {
        ("closed form", dim_h_char_p(p, k, m), Some(dim_h_below_top(p, k, m)))
    } else {
        let top = dim_h_semisimple(&field, p, k, x.residues()).map_err(|e| Failure::Disagreement(e.to_string()))?;
        ("rank sum", top, None)
    };
    let agreement = b[k - 1] == top && below.map_or(true, |v| b[k - 2] == v);
    Ok(BettiReport {
        p,
        k,
        a: x.residues().to_vec(),
        field: field.to_string(),
        characteristic: char,
        f_vector: x.f_vector().iter().map(u128::to_string).collect(),
        reduced_betti: b,
        euler_characteristic: x.reduced_euler_characteristic() as i64,
        formula: formula.into(),
        formula_top: top,
        formula_below_top: below,
        agreement,
    })
}

/// One integral-homology instance. Big integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub p: u64,
    pub k: usize,
    pub a: Vec<u32>,
    pub n: usize,
    pub divisors: Vec<String>,
    pub order: String,
    /// `ln |torsion| / N`.
    pub log_ratio: f64,
    pub euler_characteristic: i64,
    pub betti_q: Vec<usize>,
    pub betti_p: Vec<usize>,
}

impl Report for TorsionReport {}

impl From<ScanRecord> for TorsionReport {
    fn from(r: ScanRecord) -> Self {
        TorsionReport {
            p: r.p,
            k: r.k,
            a: r.a,
            n: r.n,
            divisors: r.divisors.iter().map(|d| d.to_string()).collect(),
            order: r.order.to_string(),
            log_ratio: r.log_ratio,
            euler_characteristic: r.euler as i64,
            betti_q: r.betti_q,
            betti_p: r.betti_p,
        }
    }
}

fn scan_failure(e: ScanError) -> Failure {
    match e {
        ScanError::Complex(c) => usage(c),
        other => Failure::Disagreement(other.to_string()),
    }
}

pub fn torsion(p: u64, k: usize, a: &[i64], dump_to: Option<&Path>) -> Result<TorsionReport, Failure> {
    let x = build(p, k, a)?;
    dump(&x, dump_to)?;
    scan_instance(p, k, a).map(Into::into).map_err(scan_failure)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub p: u64,
    pub a: Vec<u32>,
    pub field: String,
    pub characteristic: u64,
    pub m: usize,
    /// Minimum rank of `T_f` over nonzero `f` supported on `A`.
    pub u: usize,
    /// `p − m + 1`, attained in characteristic 0 and `p`.
    pub generic_value: usize,
}

impl Report for UncertaintyReport {}

pub fn uncertainty_cmd(p: u64, a: &[i64], char: u64, budget: Option<u64>) -> Result<UncertaintyReport, Failure> {
    if !is_prime(p) {
        return Err(usage(format!("{p} is not prime")));
    }
    let residues = sumcomplex::complex::normalize_residues(p, a).map_err(usage)?;
    let field = field_for(char, p)?;
    let u = uncertainty(&field, &residues, budget).map_err(|e| match e {
        UncertaintyError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
        UncertaintyError::Disagreement { .. } => Failure::Disagreement(e.to_string()),
        other => usage(other),
    })?;
    let m = residues.len();
    Ok(UncertaintyReport {
        p,
        a: residues,
        field: field.to_string(),
        characteristic: char,
        m,
        u,
        generic_value: p as usize - m + 1,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: usize,
    pub suites: Vec<SuiteOutcome>,
}

impl Report for VerifyReport {
    fn rows(&self) -> Option<Vec<Map<String, Value>>> {
        let rows = self
            .suites
            .iter()
            .map(|s| {
                let mut row = Map::new();
                row.insert("suite".into(), s.suite.clone().into());
                row.insert("checks".into(), s.checks.into());
                row.insert("passed".into(), s.passed().into());
                row.insert("counterexample".into(), serde_json::to_value(&s.counterexample).unwrap());
                row
            })
            .collect();
        Some(rows)
    }
}

pub fn verify(suite: &str, params: &VerifyParams) -> Result<VerifyReport, Failure> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut suites = Vec::new();
    for name in names {
        let outcome = run_suite(name, params)
            .ok_or_else(|| usage(format!("unknown suite `{name}`; expected one of {} or all", SUITES.join(", "))))?;
        suites.push(outcome);
    }
    Ok(VerifyReport {
        passed: suites.iter().all(SuiteOutcome::passed),
        checks: suites.iter().map(|s| s.checks).sum(),
        suites,
    })
}

/// A residue-set family such as `0,1,a`: fixed residues plus one free slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    fixed: Vec<i64>,
}

impl Family {
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut fixed = Vec::new();
        let mut free = 0;
        for t in s.split(',').map(str::trim) {
            if t == "a" {
                free += 1;
            } else {
                fixed.push(t.parse::<i64>().map_err(|_| format!("bad family entry `{t}`"))?);
            }
        }
        if free != 1 {
            return Err("a family needs exactly one free entry `a`".into());
        }
        Ok(Family { fixed })
    }

    /// Members over `F_p`: the free entry ranges over residues not already fixed.
    pub fn members(&self, p: u64) -> Vec<Vec<i64>> {
        let fixed: Vec<i64> = self.fixed.iter().map(|x| x.rem_euclid(p as i64)).collect();
        (0..p as i64)
            .filter(|a| !fixed.contains(a))
            .map(|a| fixed.iter().copied().chain([a]).collect())
            .collect()
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for x in &self.fixed {
            write!(f, "{x},")?;
        }
        write!(f, "a")
    }
}

/// The headline instance of the stretch run.
pub const STRETCH: (u64, [i64; 3]) = (83, [0, 1, 19]);
/// Largest prime a scan accepts without `--stretch`.
pub const DESK_LIMIT: u64 = 31;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanMaximum {
    pub p: u64,
    pub a: Vec<u32>,
    pub order: String,
    pub log_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub k: usize,
    pub family: String,
    pub instances: Vec<TorsionReport>,
    /// The instance with the largest `log_ratio` for each prime.
    pub maxima: Vec<ScanMaximum>,
}

impl Report for ScanReport {
    fn rows(&self) -> Option<Vec<Map<String, Value>>> {
        let best: Vec<(u64, &Vec<u32>)> = self.maxima.iter().map(|m| (m.p, &m.a)).collect();
        let rows = self
            .instances
            .iter()
            .map(|r| {
                let mut row = Map::new();
                let top = best.contains(&(r.p, &r.a));
                row.insert("max".into(), if top { "*" } else { "" }.into());
                row.insert("p".into(), r.p.into());
                row.insert("a".into(), serde_json::to_value(&r.a).unwrap());
                row.insert("n".into(), r.n.into());
                row.insert("divisors".into(), serde_json::to_value(&r.divisors).unwrap());
                row.insert("order".into(), r.order.clone().into());
                row.insert("log_ratio".into(), format!("{:.6}", r.log_ratio).into());
                row
            })
            .collect();
        Some(rows)
    }
}

type Key = (u64, usize, Vec<u32>);

fn key(r: &TorsionReport) -> Key {
    (r.p, r.k, r.a.clone())
}

fn load_log(path: &Path) -> Result<BTreeMap<Key, TorsionReport>, Failure> {
    let mut done = BTreeMap::new();
    let Ok(file) = File::open(path) else { return Ok(done) };
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(usage)?;
        if line.trim().is_empty() {
            continue;
        }
        let r: TorsionReport = serde_json::from_str(&line)
            .map_err(|e| usage(format!("{}:{}: not a scan record: {e}", path.display(), i + 1)))?;
        done.insert(key(&r), r);
    }
    Ok(done)
}

pub struct ScanConfig<'a> {
    pub k: usize,
    pub primes: Vec<u64>,
    pub family: Family,
    pub log: Option<&'a Path>,
    pub stretch: bool,
}

/// Runs every instance not already present in the log, appending one JSON
/// line per completed instance.
pub fn scan(cfg: &ScanConfig) -> Result<ScanReport, Failure> {
    let primes: Vec<u64> = cfg.primes.iter().copied().filter(|&p| is_prime(p) && cfg.k < p as usize).collect();
    if primes.is_empty() {
        return Err(usage("no prime in the list admits k"));
    }
    if let Some(&p) = primes.iter().find(|&&p| p > DESK_LIMIT) {
        if !cfg.stretch {
            return Err(usage(format!("p = {p} exceeds {DESK_LIMIT}; pass --stretch for hours-scale runs")));
        }
    }
    let mut wanted: Vec<(u64, Vec<i64>)> =
        primes.iter().flat_map(|&p| cfg.family.members(p).into_iter().map(move |a| (p, a))).collect();
    if cfg.stretch {
        wanted.push((STRETCH.0, STRETCH.1.to_vec()));
    }
    let mut done = match cfg.log {
        Some(path) => load_log(path)?,
        None => BTreeMap::new(),
    };
    let mut todo = Vec::new();
    for (p, a) in wanted {
        let residues = sumcomplex::complex::normalize_residues(p, &a).map_err(usage)?;
        if residues.len() <= 1 || !done.contains_key(&(p, cfg.k, residues.clone())) {
            todo.push((p, a));
        }
    }
    todo.dedup();
    let log = match cfg.log {
        Some(path) => Some(Mutex::new(
            OpenOptions::new().create(true).append(true).open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        )),
        None => None,
    };
    let fresh: Vec<TorsionReport> = todo
        .par_iter()
        .map(|(p, a)| {
            let r: TorsionReport = scan_instance(*p, cfg.k, a).map_err(scan_failure)?.into();
            if let Some(log) = &log {
                let mut f = log.lock().unwrap();
                writeln!(f, "{}", serde_json::to_string(&r).unwrap()).and_then(|_| f.flush()).map_err(usage)?;
            }
            Ok(r)
        })
        .collect::<Result<_, Failure>>()?;
    for r in fresh {
        done.insert(key(&r), r);
    }
    let mut wanted_primes = primes.clone();
    if cfg.stretch {
        wanted_primes.push(STRETCH.0);
    }
    let instances: Vec<TorsionReport> =
        done.into_values().filter(|r| r.k == cfg.k && wanted_primes.contains(&r.p)).collect();
    let mut maxima: Vec<ScanMaximum> = Vec::new();
    for r in &instances {
        match maxima.last_mut() {
            Some(m) if m.p == r.p => {
                if r.log_ratio > m.log_ratio {
                    *m = ScanMaximum { p: r.p, a: r.a.clone(), order: r.order.clone(), log_ratio: r.log_ratio };
                }
            }
            _ => maxima.push(ScanMaximum { p: r.p, a: r.a.clone(), order: r.order.clone(), log_ratio: r.log_ratio }),
        }
    }
    Ok(ScanReport { k: cfg.k, family: cfg.family.to_string(), instances, maxima })
}
