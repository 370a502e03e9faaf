//! Rank over `Q(ω_p)` of matrices with entries in `Z[ω_p]`.
//!
//! Entries are integer vectors of length `p` read modulo `x^p − 1`; such a
//! vector is zero in `Q(ω_p)` exactly when all its coefficients agree. The
//! elimination is division-free (rows are cross-multiplied), and each row
//! is kept canonical (last coefficient 0) with its content divided out.

use num_integer::Integer;

use super::Matrix;

fn canonical(v: &mut [i64]) {
    let last = *v.last().unwrap();
    if last != 0 {
        for x in v.iter_mut() {
            *x -= last;
        }
    }
}

fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn mul(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let p = a.len();
    let mut out = vec![0i64; p];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                let t = &mut out[(i + j) % p];
                *t = t.checked_add(x.checked_mul(y)?)?;
            }
        }
    }
    canonical(&mut out);
    Some(out)
}

/// The monomial `ω^e` as a coefficient vector.
pub fn monomial(p: usize, e: usize) -> Vec<i64> {
    let mut v = vec![0; p];
    v[e % p] = 1;
    canonical(&mut v);
    v
}

/// Rank over `Q(ω_p)`. Returns `None` if an intermediate coefficient
/// overflows `i64`.
pub fn rank_cyclotomic_integral(p: usize, m: &Matrix<Vec<i64>>) -> Option<usize> {
    let cols = m.cols();
    let mut a: Vec<Vec<Vec<i64>>> = m
        .to_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|mut v| {
                    assert_eq!(v.len(), p);
                    canonical(&mut v);
                    v
                })
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(pr) = (r..a.len()).find(|&i| !is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, pr);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c + 1..cols {
                let left = mul(&row[j], &pivot_row[c])?;
                let right = mul(&factor, &pivot_row[j])?;
                row[j] = left.iter().zip(&right).map(|(x, y)| x.checked_sub(*y)).collect::<Option<_>>()?;
            }
            row[c] = vec![0; p];
            let content = row[c + 1..].iter().flatten().fold(0i64, |g, &x| g.gcd(&x));
            if content > 1 {
                for x in row[c + 1..].iter_mut().flatten() {
                    *x /= content;
                }
            }
        }
        r += 1;
    }
    Some(r)
}
