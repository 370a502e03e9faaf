//! Smith normal form over the integers.
//!
//! The general routine works on big integers, always pivoting on the nonzero
//! entry of least absolute value in the remaining block. Boundary matrices
//! are mostly `±1` pivots; [`smith_normal_form_i64`] strips those in word
//! arithmetic first and hands only the leftover core to the big-integer pass.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::integer::{eliminate_unit_pivots, UnitReduction};
use super::Matrix;

/// Nonzero invariant factors `d_1 | d_2 | ⋯ | d_r`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// The invariant factors greater than one (the torsion part of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Order of the torsion part: the product of all divisors.
    pub fn torsion_order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    /// Number of divisors divisible by the prime `q`; the rank drops by exactly
    /// this much on reduction mod `q`.
    pub fn divisible_by(&self, q: u64) -> usize {
        let q = BigInt::from(q);
        self.divisors.iter().filter(|d| (*d % &q).is_zero()).count()
    }

    fn is_chain(&self) -> bool {
        self.divisors.iter().all(|d| d.is_positive())
            && self.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
}

impl Work {
    /// Position of the least nonzero |entry| in the block `[t.., t..]`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| v.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                    if v.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x != y {
            for row in &mut self.a {
                row.swap(x, y);
            }
        }
    }

    /// row_dst -= q · row_src over columns `from..`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt, from: usize) {
        debug_assert_ne!(dst, src);
        let (lo, hi) = self.a.split_at_mut(dst.max(src));
        let (target, source) = if dst < src { (&mut lo[dst], &hi[0]) } else { (&mut hi[0], &lo[src]) };
        for j in from..self.cols {
            if !source[j].is_zero() {
                target[j] -= q * &source[j];
            }
        }
    }

    /// col_j -= q · col_t, from row t on.
    fn col_axpy(&mut self, j: usize, t: usize, q: &BigInt) {
        for i in t..self.rows {
            if !self.a[i][t].is_zero() {
                let delta = q * &self.a[i][t];
                self.a[i][j] -= delta;
            }
        }
    }

    /// Diagonalizes the pivot at (t, t); returns false if the block is zero.
    fn step(&mut self, t: usize) -> bool {
        let Some((i, j)) = self.min_entry(t) else {
            return false;
        };
        self.a.swap(t, i);
        self.swap_cols(t, j);
        loop {
            let piv = self.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..self.rows {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = self.a[i][t].div_floor(&piv);
                self.row_axpy(i, t, &q, t);
                clean &= self.a[i][t].is_zero();
            }
            for j in t + 1..self.cols {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = self.a[t][j].div_floor(&piv);
                self.col_axpy(j, t, &q);
                clean &= self.a[t][j].is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survived; move it to the pivot.
                let best_row = (t + 1..self.rows)
                    .filter(|&i| !self.a[i][t].is_zero())
                    .min_by_key(|&i| self.a[i][t].abs());
                let best_col = (t + 1..self.cols)
                    .filter(|&j| !self.a[t][j].is_zero())
                    .min_by_key(|&j| self.a[t][j].abs());
                let row_val = best_row.map(|i| self.a[i][t].abs());
                let col_val = best_col.map(|j| self.a[t][j].abs());
                match (row_val, col_val) {
                    (Some(r), Some(c)) if c < r => self.swap_cols(t, best_col.unwrap()),
                    (Some(_), _) => self.a.swap(t, best_row.unwrap()),
                    (None, Some(_)) => self.swap_cols(t, best_col.unwrap()),
                    (None, None) => unreachable!(),
                }
                continue;
            }
            // Row and column are clear; the pivot must divide the rest of the block.
            let offender = (t + 1..self.rows)
                .find(|&i| (t + 1..self.cols).any(|j| !(&self.a[i][j] % &piv).is_zero()));
            match offender {
                Some(i) => {
                    self.row_axpy(t, i, &BigInt::from(-1), t);
                }
                None => return true,
            }
        }
    }
}

fn snf_bigint(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let mut w = Work { a: m.to_rows(), rows: m.rows(), cols: m.cols() };
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < w.rows.min(w.cols) && w.step(t) {
        divisors.push(w.a[t][t].abs());
        t += 1;
    }
    divisors
}

/// Smith normal form of an arbitrary big-integer matrix.
pub fn smith_normal_form(m: &Matrix<BigInt>) -> SnfResult {
    let small: Option<Vec<i64>> = m.entries().iter().map(ToPrimitive::to_i64).collect();
    match small {
        Some(v) => smith_normal_form_i64(&Matrix::from_vec(m.rows(), m.cols(), v)),
        None => finish(snf_bigint(m)),
    }
}

/// Smith normal form of a word-sized integer matrix.
pub fn smith_normal_form_i64(m: &Matrix<i64>) -> SnfResult {
    match eliminate_unit_pivots(m) {
        Some(UnitReduction { units, core }) => {
            let mut divisors = vec![BigInt::one(); units];
            divisors.extend(snf_bigint(&core.to_bigint()));
            finish(divisors)
        }
        None => finish(snf_bigint(&m.to_bigint())),
    }
}

fn finish(divisors: Vec<BigInt>) -> SnfResult {
    let out = SnfResult { divisors };
    assert!(out.is_chain(), "invariant factors violate the divisibility chain");
    out
}
