//! Inconsistency indices: the eigenvalue-based CI and the triad-based Kii,
//! together with the family closed forms and estimates for CI.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{FamilyKind, FamilySpec};
use crate::io::fmt_num;
use crate::matrix::{PcMatrix, Structure};
use crate::spectral::{self, perron_power, PowerOptions};

/// Negative CI values down to this magnitude are float noise and become 0.
pub const CI_CLAMP: f64 = 1e-9;

/// Relative slack used when flagging whether a bound held.
pub const BOUND_SLACK: f64 = 1e-9;

/// `CI = (lambda_max - n) / (n - 1)`.
pub fn ci(lambda_max: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::BadOrder(n));
    }
    let value = (lambda_max - n as f64) / (n as f64 - 1.0);
    if value < -CI_CLAMP || !value.is_finite() {
        return Err(Error::LambdaBelowOrder { lambda: lambda_max, n });
    }
    Ok(value.max(0.0))
}

#[inline]
fn triad_term(aij: f64, ajk: f64, aik: f64) -> f64 {
    let through = aij * ajk;
    1.0 - (aik / through).min(through / aik)
}

/// Kii over triads `i < j < k`.
///
/// Permuting a triad maps the ratio `a_ij a_jk / a_ik` to itself or its
/// inverse on a reciprocal matrix, so the increasing triads cover them all.
pub fn kii(m: &PcMatrix) -> f64 {
    let n = m.order();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let aij = m.get(i, j);
            for k in (j + 1)..n {
                worst = worst.max(triad_term(aij, m.get(j, k), m.get(i, k)));
            }
        }
    }
    worst
}

/// Kii over every ordered `(i, j, k)`; reference for [`kii`].
pub fn kii_exhaustive(m: &PcMatrix) -> f64 {
    let n = m.order();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                worst = worst.max(triad_term(m.get(i, j), m.get(j, k), m.get(i, k)));
            }
        }
    }
    worst
}

/// `(x-1)^2 / (2x)`, the largest CI possible when entries lie in `[1/x, x]`.
pub fn ci_upper_bound(x: f64) -> f64 {
    (x - 1.0) * (x - 1.0) / (2.0 * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerronBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `n <= lambda_max <= 1 + (n-1)/2 (x + 1/x)` for entries in `[1/x, x]`.
pub fn ag_perron_bounds(x: f64, n: usize) -> PerronBounds {
    PerronBounds { lower: n as f64, upper: spectral::lpc_odd_perron(x, n) }
}

/// Either an exact CI or a bracket for it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilyCi {
    Exact { value: f64 },
    Bounds { lower: f64, upper: f64 },
}

impl FamilyCi {
    pub fn exact(self) -> Option<f64> {
        match self {
            FamilyCi::Exact { value } => Some(value),
            FamilyCi::Bounds { .. } => None,
        }
    }
}

/// The single-pair family is unchanged under `x -> 1/x` up to permutation,
/// and the layer-cake family up to transposition, so bounds use `x >= 1`.
fn above_one(x: f64) -> f64 {
    x.max(1.0 / x)
}

/// `x / n^2`.
pub fn cpc_ci_coarse_estimate(x: f64, n: usize) -> f64 {
    above_one(x) / (n as f64 * n as f64)
}

/// `(n-2) / (n^2 (n-1)) * (x-1)^2 / x`.
pub fn cpc_ci_refined_estimate(x: f64, n: usize) -> f64 {
    let nf = n as f64;
    (nf - 2.0) / (nf * nf * (nf - 1.0)) * (x - 1.0) * (x - 1.0) / x
}

/// Bracket `[(x-1)^2/(2x) - (x^2-1)/(2x(n-1)), (x-1)^2/(2x))` for even layer-cake order.
pub fn lpc_even_ci_bounds(x: f64, n: usize) -> (f64, f64) {
    let x = above_one(x);
    let upper = ci_upper_bound(x);
    (upper - (x * x - 1.0) / (2.0 * x * (n as f64 - 1.0)), upper)
}

/// `(cbrt(x) - 1)^2 / (2 cbrt(x))`, the CI of the order-3 full matrix.
pub fn fpc3_ci(x: f64) -> f64 {
    ci_upper_bound(x.cbrt())
}

/// Closed-form CI, or the best known bracket, of a family member.
pub fn family_ci(spec: &FamilySpec) -> Result<FamilyCi> {
    spec.validate()?;
    let (x, n) = (spec.x, spec.n);
    let nf = n as f64;
    Ok(match spec.kind {
        FamilyKind::Cc => FamilyCi::Exact { value: 0.0 },
        FamilyKind::Lpc if n % 2 == 1 => FamilyCi::Exact { value: ci_upper_bound(x) },
        FamilyKind::Lpc => {
            let (lower, upper) = lpc_even_ci_bounds(x, n);
            FamilyCi::Bounds { lower, upper }
        }
        FamilyKind::Ckpc => {
            let k = spec.k_value().unwrap_or(1) as f64;
            FamilyCi::Exact { value: k / (nf - 1.0) * (x - 1.0) * (x - 1.0) / x }
        }
        FamilyKind::Fpc if n == 3 => FamilyCi::Exact { value: fpc3_ci(x) },
        FamilyKind::Fpc => FamilyCi::Exact { value: ci(spectral::fpc_perron(x, n), n)? },
        FamilyKind::Cpc => FamilyCi::Bounds {
            lower: 0.0,
            upper: cpc_ci_coarse_estimate(x, n).min(cpc_ci_refined_estimate(x, n)),
        },
    })
}

/// Limit of the full-matrix CI as the order grows: `(x^2-1)/(2x ln x) - 1`.
pub fn fpc_ci_limit(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::DegenerateX(x));
    }
    if x == 1.0 {
        return Ok(0.0);
    }
    Ok((x * x - 1.0) / (2.0 * x * x.ln()) - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    StrictUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundTarget {
    Ci,
    LambdaMax,
}

/// A named bound and whether the analysed matrix respects it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub name: String,
    pub target: BoundTarget,
    pub kind: BoundKind,
    pub value: f64,
    pub holds: bool,
}

impl Estimate {
    fn new(name: &str, target: BoundTarget, kind: BoundKind, value: f64, actual: f64) -> Self {
        let slack = BOUND_SLACK * actual.abs().max(value.abs()).max(1e-300);
        let holds = match kind {
            BoundKind::Lower => actual >= value - slack,
            BoundKind::Upper => actual <= value + slack,
            BoundKind::StrictUpper => actual < value,
        };
        Self { name: name.to_owned(), target, kind, value, holds }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub n: usize,
    /// Family parameter when a family is given, otherwise the entry ratio.
    pub x: f64,
    pub structure: Structure,
    pub lambda_max: f64,
    pub ci: f64,
    pub kii: f64,
    pub ci_upper: f64,
    pub bounds: PerronBounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_ci: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_ci: Option<FamilyCi>,
    pub estimates: Vec<Estimate>,
}

impl ConsistencyReport {
    pub fn all_hold(&self) -> bool {
        self.estimates.iter().all(|e| e.holds)
    }

    pub const CSV_HEADER: [&'static str; 10] = [
        "n",
        "x",
        "lambda_max",
        "ci",
        "kii",
        "ci_upper",
        "bounds_lower",
        "bounds_upper",
        "closed_form_ci",
        "all_hold",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            fmt_num(self.x),
            fmt_num(self.lambda_max),
            fmt_num(self.ci),
            fmt_num(self.kii),
            fmt_num(self.ci_upper),
            fmt_num(self.bounds.lower),
            fmt_num(self.bounds.upper),
            self.closed_form_ci.map(fmt_num).unwrap_or_default(),
            self.all_hold().to_string(),
        ]
    }
}

/// Computes every index and bound for `m`, using `spec` for family closed forms.
pub fn analyze(m: &PcMatrix, spec: Option<&FamilySpec>, opts: PowerOptions) -> Result<ConsistencyReport> {
    let n = m.order();
    let oracle = perron_power(m, opts)?;
    let lambda = oracle.lambda_max;
    let ci_value = ci(lambda, n)?;
    let ratio = m.max_entry_ratio();
    let ci_upper = ci_upper_bound(ratio);
    let bounds = ag_perron_bounds(ratio, n);

    let sums = m.row_sums();
    let row_min = sums.iter().cloned().fold(f64::INFINITY, f64::min);
    let row_max = sums.iter().cloned().fold(0.0, f64::max);

    use BoundKind::*;
    use BoundTarget::*;
    let mut estimates = vec![
        Estimate::new("ci_upper", Ci, Upper, ci_upper, ci_value),
        Estimate::new("perron_lower", LambdaMax, Lower, bounds.lower, lambda),
        Estimate::new("perron_upper", LambdaMax, Upper, bounds.upper, lambda),
        Estimate::new("row_sum_min", LambdaMax, Lower, row_min, lambda),
        Estimate::new("row_sum_max", LambdaMax, Upper, row_max, lambda),
    ];

    let (mut closed_form_lambda, mut closed_form_ci, mut fam_ci) = (None, None, None);
    if let Some(spec) = spec {
        spec.validate()?;
        closed_form_lambda = spectral::closed_form_perron(spec)?;
        let f = family_ci(spec)?;
        fam_ci = Some(f);
        closed_form_ci = match (f, closed_form_lambda) {
            (FamilyCi::Exact { value }, _) => Some(value),
            (FamilyCi::Bounds { .. }, Some(l)) => Some(ci(l, n)?),
            _ => None,
        };
        match spec.kind {
            FamilyKind::Cpc => {
                let (x, n) = (spec.x, spec.n);
                estimates.push(Estimate::new(
                    "cpc_refined",
                    Ci,
                    Upper,
                    cpc_ci_refined_estimate(x, n),
                    ci_value,
                ));
                estimates.push(Estimate::new("cpc_coarse", Ci, Upper, cpc_ci_coarse_estimate(x, n), ci_value));
            }
            FamilyKind::Lpc if spec.n % 2 == 0 => {
                let (lo, hi) = lpc_even_ci_bounds(spec.x, spec.n);
                estimates.push(Estimate::new("lpc_even_lower", Ci, Lower, lo, ci_value));
                estimates.push(Estimate::new("lpc_even_upper", Ci, StrictUpper, hi, ci_value));
            }
            _ => {}
        }
    }

    Ok(ConsistencyReport {
        n,
        x: spec.map_or(ratio, |s| s.x),
        structure: m.detect_structure(),
        lambda_max: lambda,
        ci: ci_value,
        kii: kii(m),
        ci_upper,
        bounds,
        closed_form_lambda,
        closed_form_ci,
        family_ci: fam_ci,
        estimates,
    })
}
