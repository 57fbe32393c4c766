use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::KnotError;
use crate::exact::integer::{alexander_polynomial, determinant_i64, IntPoly};
use crate::exact::{signature_at_root, ExactError, RootOfUnity, SignatureConfig};

/// Integer Seifert matrix of a knot: even dimension and `det(V − Vᵀ) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl SeifertMatrix {
    /// Row-major entries. Validates shape and `det(V − Vᵀ) = 1`.
    pub fn new(dim: usize, entries: Vec<i64>) -> Result<Self, KnotError> {
        if entries.len() != dim * dim {
            return Err(KnotError::InvalidSeifertMatrix(format!(
                "expected {} entries for dimension {dim}, found {}",
                dim * dim,
                entries.len()
            )));
        }
        if !dim.is_multiple_of(2) {
            return Err(KnotError::InvalidSeifertMatrix(format!("odd dimension {dim}")));
        }
        let m = Self { dim, entries };
        let skew: Vec<i64> = (0..dim * dim)
            .map(|k| {
                let (i, j) = (k / dim, k % dim);
                m.entry(i, j) - m.entry(j, i)
            })
            .collect();
        let det = determinant_i64(dim, &skew);
        if !det.is_one() {
            return Err(KnotError::InvalidSeifertMatrix(format!("det(V - V^T) = {det}, expected 1")));
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, KnotError> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(KnotError::InvalidSeifertMatrix("matrix is not square".into()));
        }
        Self::new(rows.len(), rows.concat())
    }

    /// The 0×0 matrix of the unknot.
    pub fn empty() -> Self {
        Self { dim: 0, entries: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn genus(&self) -> usize {
        self.dim / 2
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.dim * self.dim)
            .map(|k| self.entry(k % self.dim, k / self.dim))
            .collect();
        Self { dim: self.dim, entries }
    }

    /// Seifert matrix of the mirror image, `−Vᵀ`.
    pub fn mirror(&self) -> Self {
        let t = self.transpose();
        Self { dim: t.dim, entries: t.entries.into_iter().map(|x| -x).collect() }
    }

    /// Seifert matrix of the connected sum, `diag(V, W)`.
    pub fn block_sum(&self, other: &Self) -> Self {
        let dim = self.dim + other.dim;
        let mut entries = vec![0; dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries[i * dim + j] = self.entry(i, j);
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                entries[(i + self.dim) * dim + j + self.dim] = other.entry(i, j);
            }
        }
        Self { dim, entries }
    }

    /// `det(V − tVᵀ)`.
    pub fn alexander_polynomial(&self) -> IntPoly {
        alexander_polynomial(self.dim, &self.entries)
    }

    /// `|det(V + Vᵀ)| = |Δ(−1)|`.
    pub fn determinant(&self) -> BigInt {
        let sym: Vec<i64> = (0..self.dim * self.dim)
            .map(|k| {
                let (i, j) = (k / self.dim, k % self.dim);
                self.entry(i, j) + self.entry(j, i)
            })
            .collect();
        determinant_i64(self.dim, &sym).abs()
    }

    /// Levine–Tristram signature at `root`. `SingularForm` means `root` is an
    /// Alexander root.
    pub fn signature(&self, root: RootOfUnity, config: SignatureConfig) -> Result<i64, ExactError> {
        signature_at_root(self.dim, &self.entries, root, config)
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, ",")?;
            }
            let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

/// Seifert matrix of the torus knot `T(2,q)`: `−1` on the diagonal and `1` on
/// the superdiagonal for `q > 0`, the mirror `−Vᵀ` for `q < 0`. `T(2,±1)` is
/// the unknot.
pub fn torus_seifert(p: i64, q: i64) -> Result<SeifertMatrix, KnotError> {
    if p != 2 || q % 2 == 0 {
        return Err(KnotError::UnsupportedTorusParameters { p, q });
    }
    let n = (q.unsigned_abs() - 1) as usize;
    let mut entries = vec![0; n * n];
    for i in 0..n {
        entries[i * n + i] = -1;
        if i + 1 < n {
            entries[i * n + i + 1] = 1;
        }
    }
    let v = SeifertMatrix { dim: n, entries };
    Ok(if q < 0 { v.mirror() } else { v })
}
