//! Non-zero spectrum of the single-pair (corner) family.
//!
//! The characteristic polynomial factors as `lambda^(n-3) * p(lambda)` with
//! `p(lambda) = lambda^3 - n lambda^2 - c` and `c = (n-2)(x-1)^2/x`. The real
//! root comes from Cardano's formula; the complex pair from deflating `p`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three roots of the cubic factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicRoots {
    pub real_root: f64,
    pub complex_pair: (Complex64, Complex64),
}

impl CubicRoots {
    pub fn sum(&self) -> Complex64 {
        self.real_root + self.complex_pair.0 + self.complex_pair.1
    }
}

/// Cubic roots plus the multiplicity of the zero eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpcSpectrum {
    pub roots: CubicRoots,
    pub zero_multiplicity: usize,
}

impl CpcSpectrum {
    /// All `n` eigenvalues: real root, the complex pair, then the zeros.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let mut out = vec![
            Complex64::new(self.roots.real_root, 0.0),
            self.roots.complex_pair.0,
            self.roots.complex_pair.1,
        ];
        out.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), self.zero_multiplicity));
        out
    }
}

fn check(x: f64, n: usize) -> Result<()> {
    if !(x.is_finite() && x > 0.0) || x == 1.0 {
        return Err(Error::DegenerateX(x));
    }
    if n < 3 {
        return Err(Error::OrderTooSmall { n, min: 3 });
    }
    Ok(())
}

/// Constant term magnitude `c = (n-2)(x-1)^2/x`.
fn shift(x: f64, n: f64) -> f64 {
    (n - 2.0) * (x - 1.0) * (x - 1.0) / x
}

/// `p(lambda) = lambda^3 - n lambda^2 - (n-2)(x - 2 + 1/x)`.
pub fn cpc_cubic(lambda: f64, x: f64, n: usize) -> f64 {
    let nf = n as f64;
    lambda * lambda * (lambda - nf) - shift(x, nf)
}

/// `|p(lambda)|` scaled by the magnitude of its terms.
pub fn cpc_cubic_relative_residual(lambda: f64, x: f64, n: usize) -> f64 {
    let nf = n as f64;
    let scale = lambda.abs().powi(3) + nf * lambda * lambda + shift(x, nf);
    cpc_cubic(lambda, x, n).abs() / scale
}

/// Cube-root argument `B(x, n)` exactly as the closed form writes it, with
/// the signed factor `(x - 1)` in front of the square root.
///
/// For `0 < x < 1` this selects the other Cardano term; `B + n^2/(9B)` is the
/// same because the two terms multiply to `n^2/9`.
pub fn cardano_b(x: f64, n: usize) -> f64 {
    let nf = n as f64;
    let radicand = 4.0 * nf.powi(3) * (nf - 2.0) * x + 27.0 * (nf - 2.0).powi(2) * (x - 1.0).powi(2);
    let inner = nf.powi(3) / 27.0
        + (x - 1.0) * radicand.sqrt() / (2.0 * 3.0 * 3f64.sqrt() * x)
        + (nf - 2.0) * (x - 1.0).powi(2) / (2.0 * x);
    inner.cbrt()
}

fn cardano_real_root(x: f64, n: usize) -> f64 {
    let nf = n as f64;
    // |x - 1| keeps both summands non-negative: no cancellation, B >= n/3.
    let radicand = 4.0 * nf.powi(3) * (nf - 2.0) * x + 27.0 * (nf - 2.0).powi(2) * (x - 1.0).powi(2);
    let b = (nf.powi(3) / 27.0
        + (x - 1.0).abs() * radicand.sqrt() / (6.0 * 3f64.sqrt() * x)
        + shift(x, nf) / 2.0)
        .cbrt();
    b + nf * nf / (9.0 * b) + nf / 3.0
}

fn newton_polish(mut lambda: f64, x: f64, n: usize) -> f64 {
    let nf = n as f64;
    for _ in 0..50 {
        let f = cpc_cubic(lambda, x, n);
        let df = lambda * (3.0 * lambda - 2.0 * nf);
        if df == 0.0 {
            break;
        }
        let next = lambda - f / df;
        if !next.is_finite() || (next - lambda).abs() <= 1e-16 * lambda.abs() {
            if next.is_finite() && cpc_cubic(next, x, n).abs() < f.abs() {
                lambda = next;
            }
            break;
        }
        lambda = next;
    }
    lambda
}

/// Perron root and remaining spectrum of the corner matrix of order `n`.
pub fn cpc_spectrum(x: f64, n: usize) -> Result<CpcSpectrum> {
    check(x, n)?;
    let nf = n as f64;
    let mut root = cardano_real_root(x, n);
    if !root.is_finite() || cpc_cubic_relative_residual(root, x, n) > 1e-13 {
        // Seed with the largest row sum, an upper bound on the root.
        let seed = if root.is_finite() { root } else { nf - 2.0 + x.max(1.0 / x) };
        root = newton_polish(seed, x, n);
    }
    // p(l) = (l - root)(l^2 + a l + b), a = root - n, b = c / root
    let a = root - nf;
    let b = shift(x, nf) / root;
    let disc = 4.0 * b - a * a;
    let (re, im) = (-a / 2.0, disc.max(0.0).sqrt() / 2.0);
    Ok(CpcSpectrum {
        roots: CubicRoots {
            real_root: root,
            complex_pair: (Complex64::new(re, im), Complex64::new(re, -im)),
        },
        zero_multiplicity: n - 3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect(x: f64, n: usize) -> f64 {
        let (mut lo, mut hi) = (n as f64, n as f64 + x + 1.0 / x);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if cpc_cubic(mid, x, n) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn corner_two_four() {
        let s = cpc_spectrum(2.0, 4).unwrap();
        assert!((s.roots.real_root - 4.0606).abs() < 1e-4);
        assert!((s.roots.real_root - bisect(2.0, 4)).abs() < 1e-13);
        assert!(cpc_cubic_relative_residual(s.roots.real_root, 2.0, 4) <= 1e-9);
        assert!((s.roots.sum() - Complex64::new(4.0, 0.0)).norm() < 1e-10);
        assert_eq!(s.zero_multiplicity, 1);
        assert_eq!(s.eigenvalues().len(), 4);
    }

    #[test]
    fn complex_pair_are_roots() {
        for (x, n) in [(2.0, 4), (9.0, 30), (0.3, 7), (1.001, 3)] {
            let s = cpc_spectrum(x, n).unwrap();
            let (z, w) = s.roots.complex_pair;
            assert_eq!(z, w.conj());
            let nf = n as f64;
            let p = z * z * (z - nf) - shift(x, nf);
            assert!(p.norm() < 1e-9 * (nf.powi(3)), "{x} {n} {p}");
        }
    }

    #[test]
    fn approaches_order_near_one() {
        for n in [3, 10, 50] {
            let s = cpc_spectrum(1.0 + 1e-9, n).unwrap();
            assert!((s.roots.real_root - n as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn agrees_with_bisection_across_grid() {
        for x in [0.1, 0.5, 1.25, 2.0, 9.0, 100.0] {
            for n in [3, 4, 7, 12, 30, 100] {
                let s = cpc_spectrum(x, n).unwrap();
                let b = bisect(x, n);
                assert!((s.roots.real_root - b).abs() <= 1e-12 * b, "{x} {n}");
            }
        }
    }

    #[test]
    fn literal_form_holds_below_one() {
        for x in [0.2, 0.5, 0.9, 2.0, 5.0] {
            for n in [3, 6, 20] {
                let b = cardano_b(x, n);
                let nf = n as f64;
                let literal = b + nf * nf / (9.0 * b) + nf / 3.0;
                let s = cpc_spectrum(x, n).unwrap();
                assert!((literal - s.roots.real_root).abs() < 1e-9 * literal, "{x} {n}");
            }
        }
    }

    #[test]
    fn inverse_parameter_symmetry() {
        for n in [3, 5, 11] {
            let a = cpc_spectrum(4.0, n).unwrap().roots.real_root;
            let b = cpc_spectrum(0.25, n).unwrap().roots.real_root;
            assert!((a - b).abs() < 1e-12 * a);
        }
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(cpc_spectrum(1.0, 4), Err(Error::DegenerateX(_))));
        assert!(matches!(cpc_spectrum(-1.0, 4), Err(Error::DegenerateX(_))));
        assert!(matches!(cpc_spectrum(2.0, 2), Err(Error::OrderTooSmall { .. })));
    }
}
