//! Sum complexes `X_{A,k}`.
//!
//! `X_{A,k}` lives on the vertex set `F_p = {0, …, p−1}`. It contains every
//! face of dimension at most `k − 2` and, in the top dimension `k − 1`, exactly
//! the k-subsets whose elements sum into `A` modulo `p`.
//!
//! Faces are sorted vertex tuples oriented by increasing vertex order, and
//! faces of each dimension are indexed lexicographically, so every boundary
//! matrix is deterministic.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::fields::is_prime;
use crate::linalg::Matrix;
use crate::subsets::{binomial, lex};

/// A face: strictly increasing vertices.
pub type Face = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("k = {k} is outside 1 < k < p = {p}")]
    DimensionOutOfRange { p: u64, k: usize },
    #[error("the residue set A is empty")]
    EmptyResidues,
    #[error("residue {0} appears more than once modulo p")]
    RepeatedResidue(i64),
    #[error("boundary index {i} is outside 1..={top}")]
    BoundaryOutOfRange { i: usize, top: usize },
    #[error("malformed face dump: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumComplex {
    p: u32,
    k: usize,
    residues: Vec<u32>,
    top_faces: Vec<Face>,
}

/// Reduces `a` modulo `p` into sorted distinct residues.
pub fn normalize_residues(p: u64, a: &[i64]) -> Result<Vec<u32>, ComplexError> {
    if a.is_empty() {
        return Err(ComplexError::EmptyResidues);
    }
    let mut out: Vec<u32> = Vec::with_capacity(a.len());
    for &x in a {
        let r = x.rem_euclid(p as i64) as u32;
        if out.contains(&r) {
            return Err(ComplexError::RepeatedResidue(x));
        }
        out.push(r);
    }
    out.sort_unstable();
    Ok(out)
}

impl SumComplex {
    pub fn build(p: u64, k: usize, a: &[i64]) -> Result<Self, ComplexError> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(ComplexError::NotPrime(p));
        }
        if k <= 1 || k as u64 >= p {
            return Err(ComplexError::DimensionOutOfRange { p, k });
        }
        let residues = normalize_residues(p, a)?;
        let mut in_a = vec![false; p as usize];
        for &r in &residues {
            in_a[r as usize] = true;
        }
        let top_faces: Vec<Face> = lex(p as u32, k)
            .filter(|s| in_a[(s.iter().map(|&v| v as u64).sum::<u64>() % p) as usize])
            .collect();
        assert_eq!(
            top_faces.len() as u128 * p as u128,
            residues.len() as u128 * binomial(p, k as u64),
            "top face count is not (m/p)·C(p,k)"
        );
        Ok(SumComplex { p: p as u32, k, residues, top_faces })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The sorted residues of `A`.
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn m(&self) -> usize {
        self.residues.len()
    }

    pub fn top_faces(&self) -> &[Face] {
        &self.top_faces
    }

    /// Top dimension `k − 1`.
    pub fn dim(&self) -> usize {
        self.k - 1
    }

    /// All faces of dimension `d` (`d + 1` vertices), lexicographically.
    pub fn faces(&self, d: usize) -> Vec<Face> {
        match (d + 1).cmp(&self.k) {
            std::cmp::Ordering::Less => lex(self.p, d + 1).collect(),
            std::cmp::Ordering::Equal => self.top_faces.clone(),
            std::cmp::Ordering::Greater => Vec::new(),
        }
    }

    /// `[f_0, …, f_{k−1}]`.
    pub fn f_vector(&self) -> Vec<u128> {
        (0..self.k)
            .map(|d| if d + 1 < self.k { binomial(self.p as u64, d as u64 + 1) } else { self.top_faces.len() as u128 })
            .collect()
    }

    /// `N = f_{k−1}`.
    pub fn top_count(&self) -> usize {
        self.top_faces.len()
    }

    /// The augmentation `C_0 → Z`: a single row of ones.
    pub fn augmentation(&self) -> Matrix<i64> {
        Matrix::filled(1, self.p as usize, 1)
    }

    /// `∂_i : C_i → C_{i−1}` for `1 ≤ i ≤ k − 1`; rows are (i−1)-faces, columns i-faces.
    pub fn boundary_matrix(&self, i: usize) -> Result<Matrix<i64>, ComplexError> {
        if i == 0 || i >= self.k {
            return Err(ComplexError::BoundaryOutOfRange { i, top: self.k - 1 });
        }
        let rows = self.faces(i - 1);
        let cols = self.faces(i);
        let index: HashMap<&[u32], usize> = rows.iter().enumerate().map(|(r, f)| (f.as_slice(), r)).collect();
        let mut m = Matrix::filled(rows.len(), cols.len(), 0i64);
        let mut facet = Vec::with_capacity(i);
        for (c, face) in cols.iter().enumerate() {
            for j in 0..face.len() {
                facet.clear();
                facet.extend(face.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &v)| v));
                let r = index[facet.as_slice()];
                m[(r, c)] = if j % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(m)
    }

    /// `χ̃ = −1 + Σ_{i≤k−2} (−1)^i C(p, i+1) + (−1)^{k−1} f_{k−1}`, checked
    /// against the closed form `(−1)^{k−1} (m/k − 1) C(p−1, k−1)`.
    pub fn reduced_euler_characteristic(&self) -> i128 {
        let p = self.p as u64;
        let sign = |i: usize| if i % 2 == 0 { 1i128 } else { -1 };
        let mut chi = -1i128;
        for i in 0..self.k - 1 {
            chi += sign(i) * binomial(p, i as u64 + 1) as i128;
        }
        chi += sign(self.k - 1) * self.top_faces.len() as i128;
        assert_eq!(chi, euler_closed_form(p, self.k, self.m()), "reduced Euler characteristic mismatch");
        chi
    }

    /// Line-based dump: `p k` then one top face per line.
    pub fn dump_faces(&self) -> String {
        let mut out = format!("{} {}\n", self.p, self.k);
        for f in &self.top_faces {
            let line: Vec<String> = f.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }
}

/// `(−1)^{k−1} (m − k) C(p−1, k−1) / k`, with the division asserted exact.
pub fn euler_closed_form(p: u64, k: usize, m: usize) -> i128 {
    let num = (m as i128 - k as i128) * binomial(p - 1, k as u64 - 1) as i128;
    assert_eq!(num % k as i128, 0, "(m/k − 1)·C(p−1,k−1) is not integral");
    let v = num / k as i128;
    if (k - 1) % 2 == 0 {
        v
    } else {
        -v
    }
}

/// Parses the output of [`SumComplex::dump_faces`] into `(p, k, faces)`.
pub fn parse_face_dump(text: &str) -> Result<(u64, usize, Vec<Face>), ComplexError> {
    let bad = |msg: &str| ComplexError::Parse(msg.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("missing header"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let [p, k] = nums[..] else {
        return Err(bad("header must be `p k`"));
    };
    let p: u64 = p.parse().map_err(|_| bad("bad p"))?;
    let k: usize = k.parse().map_err(|_| bad("bad k"))?;
    let mut faces = Vec::new();
    for line in lines {
        let face: Face = line
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| bad("bad vertex")))
            .collect::<Result<_, _>>()?;
        if face.len() != k || face.windows(2).any(|w| w[0] >= w[1]) || face.iter().any(|&v| v as u64 >= p) {
            return Err(bad("face must be k strictly increasing vertices below p"));
        }
        faces.push(face);
    }
    Ok((p, k, faces))
}
