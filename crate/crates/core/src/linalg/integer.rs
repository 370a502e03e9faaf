//! Ranks of integer matrices in a given characteristic.

use num_bigint::BigInt;
use num_traits::Zero;

use super::Matrix;

/// Rank of the reduction of `m` modulo the prime `q < 2^32`.
pub fn rank_mod_prime(m: &Matrix<i64>, q: u64) -> usize {
    let cols = m.cols();
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|&v| v.rem_euclid(q as i64) as u64).collect())
        .filter(|r: &Vec<u64>| r.iter().any(|&v| v != 0))
        .collect();
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % q as u128) as u64;
    let inv = |x: u64| {
        let (mut base, mut e, mut acc) = (x, q - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let pinv = inv(a[r][c]);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let factor = mulmod(row[c], pinv);
            for j in c..cols {
                if pivot_row[j] != 0 {
                    let t = mulmod(factor, pivot_row[j]);
                    row[j] = if row[j] >= t { row[j] - t } else { row[j] + q - t };
                }
            }
        }
        r += 1;
    }
    r
}

/// Result of clearing every `±1` pivot from an integer matrix.
///
/// Each unit pivot contributes one invariant factor equal to 1 and one to the
/// rank over every field; `core` is the Schur complement left over.
pub(crate) struct UnitReduction {
    pub units: usize,
    pub core: Matrix<i64>,
}

/// Repeatedly pivots on entries equal to `±1`. Returns `None` if an entry
/// would overflow `i64`.
pub(crate) fn eliminate_unit_pivots(m: &Matrix<i64>) -> Option<UnitReduction> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.entries().to_vec();
    let mut row_alive = vec![true; rows];
    let mut col_alive = vec![true; cols];
    let mut units = 0;
    let mut start_col = 0;
    loop {
        // Search columns cyclically from where the last pivot was found.
        let mut found = None;
        'search: for step in 0..cols {
            let c = (start_col + step) % cols;
            if !col_alive[c] {
                continue;
            }
            for r in 0..rows {
                if row_alive[r] && a[r * cols + c].abs() == 1 {
                    found = Some((r, c));
                    break 'search;
                }
            }
        }
        let Some((r, c)) = found else { break };
        start_col = c;
        let piv = a[r * cols + c];
        let pivot_cols: Vec<usize> =
            (0..cols).filter(|&j| j != c && col_alive[j] && a[r * cols + j] != 0).collect();
        for i in 0..rows {
            if i == r || !row_alive[i] {
                continue;
            }
            let x = a[i * cols + c];
            if x == 0 {
                continue;
            }
            let factor = x.checked_mul(piv)?;
            for &j in &pivot_cols {
                let t = factor.checked_mul(a[r * cols + j])?;
                a[i * cols + j] = a[i * cols + j].checked_sub(t)?;
            }
            a[i * cols + c] = 0;
        }
        row_alive[r] = false;
        col_alive[c] = false;
        units += 1;
    }
    let keep_rows: Vec<usize> =
        (0..rows).filter(|&i| row_alive[i] && (0..cols).any(|j| col_alive[j] && a[i * cols + j] != 0)).collect();
    let keep_cols: Vec<usize> =
        (0..cols).filter(|&j| col_alive[j] && keep_rows.iter().any(|&i| a[i * cols + j] != 0)).collect();
    let core = Matrix::from_fn(keep_rows.len(), keep_cols.len(), |i, j| a[keep_rows[i] * cols + keep_cols[j]]);
    Some(UnitReduction { units, core })
}

/// Fraction-free (Bareiss) rank over `Q`.
pub(crate) fn bareiss_rank(m: &Matrix<BigInt>) -> usize {
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            for j in c + 1..cols {
                let v = (&row[j] * piv - &row[c] * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[c] = BigInt::zero();
        }
        prev = piv.clone();
        r += 1;
    }
    r
}

/// Rank over `Q`: unit pivots first, then Bareiss on what remains.
pub fn rank_rational(m: &Matrix<i64>) -> usize {
    match eliminate_unit_pivots(m) {
        Some(UnitReduction { units, core }) => units + bareiss_rank(&core.to_bigint()),
        None => bareiss_rank(&m.to_bigint()),
    }
}

/// Rank over any field of characteristic `characteristic` (0 or a prime).
pub fn rank_over(m: &Matrix<i64>, characteristic: u64) -> usize {
    if characteristic == 0 {
        rank_rational(m)
    } else {
        rank_mod_prime(m, characteristic)
    }
}
