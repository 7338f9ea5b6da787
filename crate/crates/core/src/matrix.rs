//! The pairwise-comparison matrix data model.
//!
//! A [`PcMatrix`] is a dense, strictly positive, reciprocal square matrix
//! (`a_ij * a_ji = 1`, unit diagonal). It is validated once on construction
//! and immutable afterwards, so every other module can rely on those
//! invariants without re-checking them.

use crate::error::{Error, Result};

/// Slack used when a caller asks for "exact" reciprocity (`tol = 0`).
pub const EXACT_ULPS: f64 = 4.0 * f64::EPSILON;

/// Reciprocity tolerance applied to matrices read back from files.
pub const FILE_RECIPROCITY_TOL: f64 = 1e-9;

/// Default tolerance of [`PcMatrix::is_consistent`].
pub const DEFAULT_CONSISTENCY_TOL: f64 = 1e-9;

/// Default absolute tolerance of [`PcMatrix::detect_structure`].
pub const DEFAULT_STRUCTURE_TOL: f64 = 1e-12;

/// Dense reciprocal pairwise-comparison matrix with positive entries.
#[derive(Debug, Clone, PartialEq)]
pub struct PcMatrix {
    n: usize,
    /// Row-major.
    entries: Vec<f64>,
    reciprocity_tol: f64,
}

/// Structural class of a matrix, from most general to most specific.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    General,
    Toeplitz,
    Circulant,
}

impl PcMatrix {
    /// Validates a square grid of entries.
    ///
    /// `reciprocity_tol` bounds both `|a_ij * a_ji - 1|` and `|a_ii - 1|`;
    /// a value of `0` means exact up to [`EXACT_ULPS`].
    pub fn new(grid: Vec<Vec<f64>>, reciprocity_tol: f64) -> Result<Self> {
        if !(reciprocity_tol >= 0.0) || !reciprocity_tol.is_finite() {
            return Err(Error::BadTolerance(reciprocity_tol));
        }
        let n = grid.len();
        for (row, r) in grid.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NonSquare { row, len: r.len(), expected: n });
            }
        }
        if n < 2 {
            return Err(Error::OrderTooSmall { n, min: 2 });
        }
        let entries: Vec<f64> = grid.into_iter().flatten().collect();
        Self::from_row_major(n, entries, reciprocity_tol)
    }

    pub(crate) fn from_row_major(n: usize, entries: Vec<f64>, reciprocity_tol: f64) -> Result<Self> {
        debug_assert_eq!(entries.len(), n * n);
        for (idx, &value) in entries.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveEntry { row: idx / n, col: idx % n, value });
            }
        }
        let tol = reciprocity_tol.max(EXACT_ULPS);
        for i in 0..n {
            let value = entries[i * n + i];
            if (value - 1.0).abs() > tol {
                return Err(Error::DiagonalNotOne { index: i, value });
            }
        }
        let mut worst: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            for j in (i + 1)..n {
                let rel_err = (entries[i * n + j] * entries[j * n + i] - 1.0).abs();
                if rel_err > tol && worst.is_none_or(|(_, _, w)| rel_err > w) {
                    worst = Some((i, j, rel_err));
                }
            }
        }
        if let Some((i, j, rel_err)) = worst {
            return Err(Error::ReciprocityViolation { i, j, rel_err });
        }
        Ok(Self { n, entries, reciprocity_tol })
    }

    /// Consistent matrix `a_ij = w_i / w_j` generated by a weight vector.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if let Some((index, &value)) =
            weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::NonPositiveWeight { index, value });
        }
        let n = weights.len();
        if n < 2 {
            return Err(Error::OrderTooSmall { n, min: 2 });
        }
        let mut entries = vec![1.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let ratio = weights[i] / weights[j];
                entries[i * n + j] = ratio;
                entries[j * n + i] = 1.0 / ratio;
            }
        }
        Self::from_row_major(n, entries, 0.0)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn reciprocity_tol(&self) -> f64 {
        self.reciprocity_tol
    }

    /// Entry `a_ij` with zero-based indices.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n)
    }

    pub fn to_grid(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        for (yi, row) in y.iter_mut().zip(self.rows()) {
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// Exhaustive check of `a_ij * a_jk = a_ik` using the multiplicative residual.
    pub fn is_consistent(&self, tol: f64) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let aij = self.get(i, j);
                for k in 0..n {
                    if (aij * self.get(j, k) / self.get(i, k) - 1.0).abs() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<f64> {
        let n = self.n;
        (0..n).map(|j| (0..n).map(|i| self.get(i, j)).sum()).collect()
    }

    /// Smallest `x >= 1` with `1/x <= a_ij <= x` for all entries.
    pub fn max_entry_ratio(&self) -> f64 {
        self.entries
            .iter()
            .fold(1.0_f64, |acc, &a| acc.max(a).max(1.0 / a))
    }

    pub fn detect_structure(&self) -> Structure {
        self.detect_structure_with_tol(DEFAULT_STRUCTURE_TOL)
    }

    /// Classifies by diagonal constancy; `tol` is an absolute entry tolerance.
    pub fn detect_structure_with_tol(&self, tol: f64) -> Structure {
        let n = self.n;
        let close = |a: f64, b: f64| (a - b).abs() <= tol;
        for i in 1..n {
            for j in 1..n {
                if !close(self.get(i, j), self.get(i - 1, j - 1)) {
                    return Structure::General;
                }
            }
        }
        // Toeplitz: each row is a cyclic shift iff a_{i,0} == a_{i-1,n-1}.
        if (1..n).all(|i| close(self.get(i, 0), self.get(i - 1, n - 1))) {
            Structure::Circulant
        } else {
            Structure::Toeplitz
        }
    }

    /// First row as a [`CirculantRow`] when the matrix is circulant.
    pub fn circulant_row(&self) -> Option<CirculantRow> {
        (self.detect_structure() == Structure::Circulant)
            .then(|| CirculantRow { c: self.row(0).to_vec() })
    }
}

/// First row `(c_0, ..., c_{n-1})` of a circulant matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantRow {
    c: Vec<f64>,
}

impl CirculantRow {
    pub fn new(c: Vec<f64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::OrderTooSmall { n: 0, min: 1 });
        }
        if let Some((col, &value)) = c.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonPositiveEntry { row: 0, col, value });
        }
        Ok(Self { c })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `c_0 = 1` and `c_k * c_{n-k} = 1` within `tol` (relative).
    pub fn is_reciprocal(&self, tol: f64) -> bool {
        let n = self.c.len();
        let tol = tol.max(EXACT_ULPS);
        (self.c[0] - 1.0).abs() <= tol
            && (1..n).all(|k| (self.c[k] * self.c[n - k] - 1.0).abs() <= tol)
    }

    /// Expands the row into the full circulant PC matrix.
    pub fn to_matrix(&self) -> Result<PcMatrix> {
        let n = self.c.len();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            entries.extend((0..n).map(|j| self.c[(j + n - i) % n]));
        }
        if n < 2 {
            return Err(Error::OrderTooSmall { n, min: 2 });
        }
        PcMatrix::from_row_major(n, entries, 0.0)
    }
}
