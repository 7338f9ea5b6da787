//! Constructors for the special Toeplitz PC matrix families.
//!
//! All families use only the entries `1`, `x` and `1/x`. The reciprocal is
//! computed once per matrix and placed, so `a_ij * a_ji` is as close to 1 as
//! a single division allows.
//!
//! | kind   | shape                                                        |
//! |--------|--------------------------------------------------------------|
//! | `cc`   | all ones (consistent)                                        |
//! | `cpc`  | all ones except one pair `x`, `1/x` (default corner `(1,n)`)  |
//! | `lpc`  | diagonals above the main one alternate `x`, `1/x`, `x`, ...   |
//! | `ckpc` | circulant, `k` offsets carry `x` and their mirrors `1/x`      |
//! | `fpc`  | `x` above the diagonal, `1/x` below                           |

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PcMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Cc,
    Cpc,
    Lpc,
    Ckpc,
    Fpc,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::Cc,
        FamilyKind::Cpc,
        FamilyKind::Lpc,
        FamilyKind::Ckpc,
        FamilyKind::Fpc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Cc => "cc",
            FamilyKind::Cpc => "cpc",
            FamilyKind::Lpc => "lpc",
            FamilyKind::Ckpc => "ckpc",
            FamilyKind::Fpc => "fpc",
        }
    }
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cc" => Ok(FamilyKind::Cc),
            "cpc" => Ok(FamilyKind::Cpc),
            "lpc" => Ok(FamilyKind::Lpc),
            "ckpc" => Ok(FamilyKind::Ckpc),
            "fpc" => Ok(FamilyKind::Fpc),
            other => Err(Error::Parse(format!("unknown family kind `{other}`"))),
        }
    }
}

fn default_x() -> f64 {
    1.0
}

/// A member of one of the families, fully described by its parameters.
///
/// `placement` and `offsets` are one-based, matching the usual matrix
/// notation (`(1, n)` is the top-right corner).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    #[serde(default = "default_x")]
    pub x: f64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub placement: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<Vec<usize>>,
}

impl FamilySpec {
    fn base(kind: FamilyKind, x: f64, n: usize) -> Self {
        Self { kind, x, n, k: None, placement: None, offsets: None }
    }

    pub fn cc(n: usize) -> Self {
        Self::base(FamilyKind::Cc, 1.0, n)
    }

    pub fn cpc(x: f64, n: usize) -> Self {
        Self::base(FamilyKind::Cpc, x, n)
    }

    pub fn lpc(x: f64, n: usize) -> Self {
        Self::base(FamilyKind::Lpc, x, n)
    }

    pub fn ckpc(x: f64, n: usize, k: usize) -> Self {
        Self { k: Some(k), ..Self::base(FamilyKind::Ckpc, x, n) }
    }

    pub fn fpc(x: f64, n: usize) -> Self {
        Self::base(FamilyKind::Fpc, x, n)
    }

    pub fn with_placement(mut self, i: usize, j: usize) -> Self {
        self.placement = Some((i, j));
        self
    }

    pub fn with_offsets(mut self, offsets: Vec<usize>) -> Self {
        self.offsets = Some(offsets);
        self
    }

    /// `k` for the `ckpc` family, falling back to the size of `offsets`.
    pub fn k_value(&self) -> Option<usize> {
        self.k.or_else(|| self.offsets.as_ref().map(Vec::len))
    }

    /// Builds the matrix, validating every parameter.
    pub fn generate(&self) -> Result<PcMatrix> {
        match self.kind {
            FamilyKind::Cc => gen_cc(self.n),
            FamilyKind::Cpc => gen_cpc(self.x, self.n, self.placement),
            FamilyKind::Lpc => gen_lpc(self.x, self.n),
            FamilyKind::Ckpc => {
                let k = self
                    .k_value()
                    .ok_or(Error::MissingParameter { kind: "ckpc", param: "k" })?;
                gen_ckpc(self.x, self.n, k, self.offsets.as_deref())
            }
            FamilyKind::Fpc => gen_fpc(self.x, self.n),
        }
    }

    /// Checks parameters without materialising the matrix.
    pub fn validate(&self) -> Result<()> {
        match self.kind {
            FamilyKind::Cc => check_order(self.n, 2),
            FamilyKind::Cpc => {
                check_x(self.x)?;
                check_order(self.n, 3)?;
                if let Some((i, j)) = self.placement {
                    check_placement(i, j, self.n)?;
                }
                Ok(())
            }
            FamilyKind::Lpc => {
                check_x(self.x)?;
                check_order(self.n, 3)
            }
            FamilyKind::Ckpc => {
                check_x(self.x)?;
                check_order(self.n, 3)?;
                let k = self
                    .k_value()
                    .ok_or(Error::MissingParameter { kind: "ckpc", param: "k" })?;
                check_k(self.n, k)?;
                if let Some(s) = &self.offsets {
                    check_offsets(self.n, k, s)?;
                }
                Ok(())
            }
            FamilyKind::Fpc => {
                check_positive_x(self.x)?;
                check_order(self.n, 3)
            }
        }
    }
}

fn check_order(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::OrderTooSmall { n, min })
    } else {
        Ok(())
    }
}

fn check_positive_x(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateX(x))
    }
}

fn check_x(x: f64) -> Result<()> {
    check_positive_x(x)?;
    if x == 1.0 {
        return Err(Error::DegenerateX(x));
    }
    Ok(())
}

fn check_placement(i: usize, j: usize, n: usize) -> Result<()> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        Err(Error::BadPlacement { i, j, n })
    } else {
        Ok(())
    }
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || 2 * k > n - 1 {
        Err(Error::KTooLarge { k, n })
    } else {
        Ok(())
    }
}

fn check_offsets(n: usize, k: usize, offsets: &[usize]) -> Result<()> {
    let clash = |reason: String| Error::OffsetsClash { offsets: offsets.to_vec(), n, reason };
    if offsets.len() != k {
        return Err(clash(format!("expected {k} offsets, got {}", offsets.len())));
    }
    for (idx, &s) in offsets.iter().enumerate() {
        if s == 0 || s >= n {
            return Err(clash(format!("offset {s} outside 1..={}", n - 1)));
        }
        if offsets[..idx].contains(&s) {
            return Err(clash(format!("offset {s} repeated")));
        }
        if offsets.contains(&(n - s)) {
            return Err(clash(format!("offset {s} and its mirror {} both chosen", n - s)));
        }
    }
    Ok(())
}

/// All-ones consistent matrix.
pub fn gen_cc(n: usize) -> Result<PcMatrix> {
    check_order(n, 2)?;
    PcMatrix::from_row_major(n, vec![1.0; n * n], 0.0)
}

/// One pair `a_ij = x`, `a_ji = 1/x` in an otherwise all-ones matrix.
/// `placement` is one-based and defaults to the corner `(1, n)`.
pub fn gen_cpc(x: f64, n: usize, placement: Option<(usize, usize)>) -> Result<PcMatrix> {
    check_x(x)?;
    check_order(n, 3)?;
    let (i, j) = placement.unwrap_or((1, n));
    check_placement(i, j, n)?;
    let mut entries = vec![1.0; n * n];
    entries[(i - 1) * n + (j - 1)] = x;
    entries[(j - 1) * n + (i - 1)] = 1.0 / x;
    PcMatrix::from_row_major(n, entries, 0.0)
}

/// Layer-cake matrix: diagonal `d = j - i > 0` holds `x` for odd `d`, `1/x` for even `d`.
pub fn gen_lpc(x: f64, n: usize) -> Result<PcMatrix> {
    check_x(x)?;
    check_order(n, 3)?;
    let inv = 1.0 / x;
    let mut entries = vec![1.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (up, down) = if (j - i) % 2 == 1 { (x, inv) } else { (inv, x) };
            entries[i * n + j] = up;
            entries[j * n + i] = down;
        }
    }
    PcMatrix::from_row_major(n, entries, 0.0)
}

/// Circulant matrix with `k` entries `x` and `k` entries `1/x` per row.
///
/// Each chosen offset `d` puts `x` on the cyclic diagonal `j - i = d (mod n)`
/// and `1/x` on `j - i = n - d`. Default offsets are `{1, ..., k}`.
pub fn gen_ckpc(x: f64, n: usize, k: usize, offsets: Option<&[usize]>) -> Result<PcMatrix> {
    check_x(x)?;
    check_order(n, 3)?;
    check_k(n, k)?;
    let default: Vec<usize>;
    let offsets = match offsets {
        Some(s) => s,
        None => {
            default = (1..=k).collect();
            &default
        }
    };
    check_offsets(n, k, offsets)?;
    let inv = 1.0 / x;
    let mut row = vec![1.0; n];
    for &d in offsets {
        row[d] = x;
        row[n - d] = inv;
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        entries.extend((0..n).map(|j| row[(j + n - i) % n]));
    }
    PcMatrix::from_row_major(n, entries, 0.0)
}

/// `x` above the diagonal, `1/x` below. `x = 1` gives the all-ones matrix.
pub fn gen_fpc(x: f64, n: usize) -> Result<PcMatrix> {
    check_positive_x(x)?;
    check_order(n, 3)?;
    let inv = 1.0 / x;
    let mut entries = vec![1.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            entries[i * n + j] = x;
            entries[j * n + i] = inv;
        }
    }
    PcMatrix::from_row_major(n, entries, 0.0)
}

/// Every valid offset set of size `k` for order `n`, in lexicographic order.
///
/// Offsets pair up as `{d, n - d}` with `d < n - d`; a set picks `k` pairs and
/// one side of each.
pub fn valid_offset_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n < 3 || check_k(n, k).is_err() {
        return Vec::new();
    }
    let pairs: Vec<usize> = (1..n).filter(|&d| d < n - d).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(k);
    choose_pairs(&pairs, n, k, 0, &mut chosen, &mut out);
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    out
}

fn choose_pairs(
    pairs: &[usize],
    n: usize,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if chosen.len() == k {
        out.push(chosen.clone());
        return;
    }
    for p in start..pairs.len() {
        for side in [pairs[p], n - pairs[p]] {
            chosen.push(side);
            choose_pairs(pairs, n, k, p + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// Every one-based placement `(i, j)`, `i != j`, of the off-diagonal pair.
pub fn cpc_placements(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}
