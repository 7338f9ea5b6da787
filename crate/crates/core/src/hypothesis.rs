//! Empirical harness for the even-order layer-cake matrices.
//!
//! For even `n` the rows of `LPC(x, n)` alternate between two sums, giving
//! two concentric Gerschgorin discs with radii `r < R`. Two kinds of checks
//! are run per grid point:
//!
//! * proven: `1 + r <= lambda_max < 1 + m` with `m = (r + R) / 2`;
//! * conjectured: `1 + H(r, R) <= lambda_max <= 1 + G(r, R)` (harmonic and
//!   geometric means), together with monotonicity of `lambda_max` in `x`
//!   and `n`.
//!
//! A failed proven check is a bug. A failed conjecture is a finding and is
//! only reported.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::gen_lpc;
use crate::io::fmt_num;
use crate::spectral::{perron_power, PowerOptions};

/// Multiple of `oracle_tol * lambda` tolerated in conjecture comparisons.
pub const SLACK_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisRow {
    pub x: f64,
    pub n: usize,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    #[serde(rename = "one_plus_H")]
    pub h_bound: f64,
    pub lambda_max: f64,
    #[serde(rename = "one_plus_G")]
    pub g_bound: f64,
    /// `lambda_max - (1 + H)`.
    pub lower_margin: f64,
    /// `(1 + G) - lambda_max`.
    pub upper_margin: f64,
    /// Conjectured chain, within slack.
    pub holds: bool,
    /// `1 + r <= lambda_max < 1 + m`.
    pub proven_chain_holds: bool,
}

impl HypothesisRow {
    pub const CSV_HEADER: [&'static str; 10] = [
        "x",
        "n",
        "r",
        "R",
        "one_plus_H",
        "lambda_max",
        "one_plus_G",
        "lower_margin",
        "upper_margin",
        "holds",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            fmt_num(self.x),
            self.n.to_string(),
            fmt_num(self.r),
            fmt_num(self.big_r),
            fmt_num(self.h_bound),
            fmt_num(self.lambda_max),
            fmt_num(self.g_bound),
            fmt_num(self.lower_margin),
            fmt_num(self.upper_margin),
            self.holds.to_string(),
        ]
    }

    /// Arithmetic mean `m` of the radii.
    pub fn mean_radius(&self) -> f64 {
        0.5 * (self.r + self.big_r)
    }
}

fn check_even(n: usize) -> Result<()> {
    if n % 2 == 1 || n < 4 {
        Err(Error::OddOrder(n))
    } else {
        Ok(())
    }
}

fn radii_unchecked(x: f64, n: usize) -> (f64, f64) {
    let half = n as f64 / 2.0 * (x + 1.0 / x);
    (half - x, half - 1.0 / x)
}

/// Gerschgorin radii `(r, R)` of `LPC(x, n)` for even `n` and `x > 1`.
pub fn lpc_even_radii(x: f64, n: usize) -> Result<(f64, f64)> {
    check_even(n)?;
    if !(x.is_finite() && x > 1.0) {
        return Err(Error::XNotAboveOne(x));
    }
    Ok(radii_unchecked(x, n))
}

/// Builds one table row; `x > 1` and even `n` are required.
pub fn check_hypothesis(x: f64, n: usize, opts: PowerOptions) -> Result<HypothesisRow> {
    let (r, big_r) = lpc_even_radii(x, n)?;
    row_from_radii(x, n, r, big_r, opts)
}

/// As [`check_hypothesis`] but also accepts `0 < x < 1`, where the formulas
/// give `r > R`. Not covered by any claim; exploratory only.
pub fn check_hypothesis_experimental(x: f64, n: usize, opts: PowerOptions) -> Result<HypothesisRow> {
    check_even(n)?;
    if !(x.is_finite() && x > 0.0) || x == 1.0 {
        return Err(Error::DegenerateX(x));
    }
    let (r, big_r) = radii_unchecked(x, n);
    row_from_radii(x, n, r, big_r, opts)
}

fn row_from_radii(x: f64, n: usize, r: f64, big_r: f64, opts: PowerOptions) -> Result<HypothesisRow> {
    let lambda = perron_power(&gen_lpc(x, n)?, opts)?.lambda_max;
    let h = 2.0 * r * big_r / (r + big_r);
    let g = (r * big_r).sqrt();
    let m = 0.5 * (r + big_r);
    let slack = SLACK_FACTOR * opts.tol * lambda;
    let (h_bound, g_bound) = (1.0 + h, 1.0 + g);
    Ok(HypothesisRow {
        x,
        n,
        r,
        big_r,
        h_bound,
        lambda_max: lambda,
        g_bound,
        lower_margin: lambda - h_bound,
        upper_margin: g_bound - lambda,
        holds: h_bound - slack <= lambda && lambda <= g_bound + slack,
        proven_chain_holds: 1.0 + r.min(big_r) - slack <= lambda && lambda < 1.0 + m,
    })
}

/// Rows in `x`-major, `n`-minor order. Cells run in parallel; the order does not.
pub fn sweep_table(xs: &[f64], ns: &[usize], opts: PowerOptions) -> Result<Vec<HypothesisRow>> {
    sweep_with(xs, ns, opts, check_hypothesis)
}

pub fn sweep_table_experimental(xs: &[f64], ns: &[usize], opts: PowerOptions) -> Result<Vec<HypothesisRow>> {
    sweep_with(xs, ns, opts, check_hypothesis_experimental)
}

fn sweep_with(
    xs: &[f64],
    ns: &[usize],
    opts: PowerOptions,
    cell: fn(f64, usize, PowerOptions) -> Result<HypothesisRow>,
) -> Result<Vec<HypothesisRow>> {
    let grid: Vec<(f64, usize)> = xs.iter().flat_map(|&x| ns.iter().map(move |&n| (x, n))).collect();
    grid.par_iter().map(|&(x, n)| cell(x, n, opts)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    X,
    N,
}

/// Adjacent grid points where `lambda_max` went down.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityViolation {
    pub axis: Axis,
    pub from: (f64, usize),
    pub to: (f64, usize),
    pub lambda_from: f64,
    pub lambda_to: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub comparisons: usize,
    pub violations: Vec<MonotonicityViolation>,
}

impl MonotonicityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `lambda_max` between neighbours along each axis of the grid.
///
/// A pair is a violation when the later point is smaller by more than the
/// oracle slack.
pub fn monotonicity_probe(xs: &[f64], ns: &[usize], opts: PowerOptions) -> Result<MonotonicityReport> {
    if xs.windows(2).any(|w| !(w[0] < w[1])) || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedGrid);
    }
    let rows = sweep_table(xs, ns, opts)?;
    let at = |xi: usize, ni: usize| &rows[xi * ns.len() + ni];
    let mut comparisons = 0;
    let mut violations = Vec::new();
    let mut compare = |axis, a: &HypothesisRow, b: &HypothesisRow| {
        comparisons += 1;
        let slack = SLACK_FACTOR * opts.tol * b.lambda_max;
        if b.lambda_max < a.lambda_max - slack {
            violations.push(MonotonicityViolation {
                axis,
                from: (a.x, a.n),
                to: (b.x, b.n),
                lambda_from: a.lambda_max,
                lambda_to: b.lambda_max,
            });
        }
    };
    for xi in 0..xs.len() {
        for ni in 0..ns.len() {
            if xi + 1 < xs.len() {
                compare(Axis::X, at(xi, ni), at(xi + 1, ni));
            }
            if ni + 1 < ns.len() {
                compare(Axis::N, at(xi, ni), at(xi, ni + 1));
            }
        }
    }
    Ok(MonotonicityReport { comparisons, violations })
}
