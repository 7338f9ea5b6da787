//! Power iteration for the Perron root of a positive matrix.
//!
//! Iterates stay strictly positive, so each step normalises by the plain sum
//! and the eigenvalue estimate is `sum(A v)` with `sum(v) = 1`.

use serde::{Deserialize, Serialize};

use super::SpectralResult;
use crate::error::{Error, Result};
use crate::matrix::PcMatrix;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_iter: DEFAULT_MAX_ITER }
    }
}

/// Perron root and unit-sum Perron vector of `m`.
///
/// Stops once successive estimates agree to `tol * lambda` and the scaled
/// residual `||A v - lambda v||_inf / lambda` is at most `tol`.
pub fn perron_power(m: &PcMatrix, opts: PowerOptions) -> Result<SpectralResult> {
    if !(opts.tol > 0.0 && opts.tol.is_finite()) {
        return Err(Error::BadTolerance(opts.tol));
    }
    let n = m.order();
    let mut v = vec![1.0 / n as f64; n];
    let mut w = vec![0.0; n];
    let mut prev = f64::NAN;
    let mut residual = f64::INFINITY;

    for iter in 1..=opts.max_iter {
        m.mul_vec(&v, &mut w);
        let lambda: f64 = w.iter().sum();
        residual = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (wi - lambda * vi).abs())
            .fold(0.0, f64::max)
            / lambda;

        if (lambda - prev).abs() <= opts.tol * lambda && residual <= opts.tol {
            return Ok(SpectralResult {
                lambda_max: lambda,
                perron_vector: v,
                iterations: iter,
                residual,
                full_spectrum: None,
            });
        }
        prev = lambda;
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / lambda;
        }
    }
    Err(Error::NoConvergence { iterations: opts.max_iter, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cc, gen_cpc, gen_fpc, gen_lpc};

    /// Independent root of `t^3 - 4 t^2 - 1` by bisection on `[4, 5]`.
    fn bisect_cpc_2_4() -> f64 {
        let f = |t: f64| t * t * t - 4.0 * t * t - 1.0;
        let (mut lo, mut hi) = (4.0, 5.0);
        while hi - lo > 1e-14 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn consistent_matrix_root_is_order() {
        let r = perron_power(&gen_cc(6).unwrap(), PowerOptions::default()).unwrap();
        assert!((r.lambda_max - 6.0).abs() < 1e-12);
        for v in &r.perron_vector {
            assert!((v - 1.0 / 6.0).abs() < 1e-14);
        }
    }

    #[test]
    fn lpc_odd_root_and_uniform_vector() {
        let r = perron_power(&gen_lpc(2.0, 5).unwrap(), PowerOptions::default()).unwrap();
        assert!((r.lambda_max - 6.0).abs() < 1e-10);
        for v in &r.perron_vector {
            assert!((v - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn cpc_root_matches_bisection() {
        let expect = bisect_cpc_2_4();
        assert!((expect - 4.0606).abs() < 1e-4);
        let r = perron_power(&gen_cpc(2.0, 4, None).unwrap(), PowerOptions::default()).unwrap();
        assert!((r.lambda_max - expect).abs() < 1e-11);
        assert!(r.residual <= DEFAULT_TOL);
    }

    #[test]
    fn root_within_row_sum_bounds() {
        let m = gen_fpc(5.0, 7).unwrap();
        let r = perron_power(&m, PowerOptions::default()).unwrap();
        let sums = m.row_sums();
        let lo = sums.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = sums.iter().cloned().fold(0.0, f64::max);
        assert!(lo <= r.lambda_max && r.lambda_max <= hi);
        assert!(r.perron_vector.iter().all(|&v| v > 0.0));
        assert!((r.perron_vector.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let m = gen_fpc(9.0, 12).unwrap();
        let err = perron_power(&m, PowerOptions { tol: 1e-12, max_iter: 2 }).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { iterations: 2, .. }));
        assert!(perron_power(&m, PowerOptions { tol: 0.0, max_iter: 10 }).is_err());
    }
}
