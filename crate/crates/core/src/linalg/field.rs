//! Gaussian elimination over an arbitrary [`FieldSpec`].

use super::Matrix;
use crate::fields::{FieldElement, FieldSpec};

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(field: &FieldSpec, a: &mut [Vec<FieldElement>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(&a[r][c]).expect("pivot is nonzero");
        for x in a[r][c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..a.len() {
            if i == r || field.is_zero(&a[i][c]) {
                continue;
            }
            let factor = a[i][c].clone();
            for j in c..cols {
                if field.is_zero(&a[r][j]) {
                    continue;
                }
                let t = field.mul(&factor, &a[r][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Forward elimination only; enough for the rank.
pub fn rank(field: &FieldSpec, m: &Matrix<FieldElement>) -> usize {
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| !field.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, pr);
        let inv = field.inv(&a[r][c]).expect("pivot is nonzero");
        for i in r + 1..a.len() {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let factor = field.mul(&a[i][c], &inv);
            for j in c + 1..cols {
                if field.is_zero(&a[r][j]) {
                    continue;
                }
                let t = field.mul(&factor, &a[r][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
            a[i][c] = field.zero();
        }
        r += 1;
    }
    r
}

/// A basis of `{v : Mv = 0}`, one vector per free column of the echelon form.
pub fn kernel_basis(field: &FieldSpec, m: &Matrix<FieldElement>) -> Vec<Vec<FieldElement>> {
    let cols = m.cols();
    let mut a = m.to_rows();
    let pivots = rref(field, &mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&a[row][f]);
            }
            debug_assert!(mat_vec(field, m, &v).iter().all(|x| field.is_zero(x)));
            v
        })
        .collect()
}

pub fn mat_vec(field: &FieldSpec, m: &Matrix<FieldElement>, v: &[FieldElement]) -> Vec<FieldElement> {
    assert_eq!(m.cols(), v.len());
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
        })
        .collect()
}
