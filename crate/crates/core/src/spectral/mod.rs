//! Perron roots and spectra.
//!
//! Two independent routes are provided: [`perron_power`] works on any PC
//! matrix, while the closed forms ([`closed_form_perron`],
//! [`closed_form_spectrum`]) only know the family parameters. The
//! verification suite compares one against the other.

mod circulant;
mod cubic;
mod gerschgorin;
mod power;

pub use circulant::circulant_spectrum;
pub use cubic::{
    cardano_b, cpc_cubic, cpc_cubic_relative_residual, cpc_spectrum, CpcSpectrum, CubicRoots,
};
pub use gerschgorin::{gerschgorin_discs, spectrum_in_discs, GerschgorinDisc, CONTAINMENT_SLACK};
pub use power::{perron_power, PowerOptions, DEFAULT_MAX_ITER, DEFAULT_TOL};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::generators::{FamilyKind, FamilySpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub lambda_max: f64,
    /// Normalised to unit sum.
    pub perron_vector: Vec<f64>,
    pub iterations: usize,
    /// `||A v - lambda v||_inf / lambda`.
    pub residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_spectrum: Option<Vec<Complex64>>,
}

/// `1 + (n-1)/2 (x + 1/x)`, the Perron root of the odd layer-cake matrix.
pub fn lpc_odd_perron(x: f64, n: usize) -> f64 {
    1.0 + (n as f64 - 1.0) / 2.0 * (x + 1.0 / x)
}

/// Row sum `n + k (x-1)^2 / x` of every circulant member with `k` pairs.
pub fn ckpc_perron(x: f64, n: usize, k: usize) -> f64 {
    n as f64 + k as f64 * (x - 1.0) * (x - 1.0) / x
}

/// `(x-1)/x * (x + x^(2/n)) / (x^(2/n) - 1)`; returns `n` at `x = 1`.
pub fn fpc_perron(x: f64, n: usize) -> f64 {
    if x == 1.0 {
        return n as f64;
    }
    let e = 2.0 * x.ln() / n as f64;
    let p = e.exp();
    (x - 1.0) / x * (x + p) / e.exp_m1()
}

/// Closed-form Perron root of a family member, or `None` for the even-order
/// layer-cake matrices, which only have bounds.
pub fn closed_form_perron(spec: &FamilySpec) -> Result<Option<f64>> {
    spec.validate()?;
    let (x, n) = (spec.x, spec.n);
    Ok(match spec.kind {
        FamilyKind::Cc => Some(n as f64),
        FamilyKind::Cpc => Some(cpc_spectrum(x, n)?.roots.real_root),
        FamilyKind::Lpc if n % 2 == 1 => Some(lpc_odd_perron(x, n)),
        FamilyKind::Lpc => None,
        FamilyKind::Ckpc => spec.k_value().map(|k| ckpc_perron(x, n, k)),
        FamilyKind::Fpc => Some(fpc_perron(x, n)),
    })
}

/// Full spectrum from closed forms: circulant members through the discrete
/// Fourier sum, the corner family through its cubic. `None` otherwise.
pub fn closed_form_spectrum(spec: &FamilySpec) -> Result<Option<Vec<Complex64>>> {
    spec.validate()?;
    match spec.kind {
        FamilyKind::Cpc => Ok(Some(cpc_spectrum(spec.x, spec.n)?.eigenvalues())),
        FamilyKind::Lpc if spec.n % 2 == 0 => Ok(None),
        FamilyKind::Fpc if spec.x != 1.0 => Ok(None),
        _ => {
            let m = spec.generate()?;
            Ok(m.circulant_row().map(|row| circulant_spectrum(&row)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_perron(&FamilySpec::lpc(2.0, 5)).unwrap(), Some(6.0));
        assert_eq!(closed_form_perron(&FamilySpec::lpc(2.0, 4)).unwrap(), None);
        assert_eq!(closed_form_perron(&FamilySpec::cc(7)).unwrap(), Some(7.0));
        let f = closed_form_perron(&FamilySpec::fpc(2.25, 4)).unwrap().unwrap();
        assert!((f - (4.0 + 1.0 / 6.0)).abs() < 1e-14);
        let f = closed_form_perron(&FamilySpec::fpc(8.0, 3)).unwrap().unwrap();
        assert!((f - 3.5).abs() < 1e-14);
        assert_eq!(closed_form_perron(&FamilySpec::fpc(1.0, 6)).unwrap(), Some(6.0));
        assert_eq!(closed_form_perron(&FamilySpec::ckpc(2.0, 5, 2)).unwrap(), Some(6.0));
        assert!(closed_form_perron(&FamilySpec::lpc(1.0, 5)).is_err());
    }

    #[test]
    fn fpc_order_three_form() {
        for x in [0.2_f64, 1.1, 2.0, 3.375, 8.0, 27.0] {
            let expect = x.cbrt() + 1.0 / x.cbrt() + 1.0;
            assert!((fpc_perron(x, 3) - expect).abs() < 1e-13 * expect, "{x}");
        }
    }

    #[test]
    fn fpc_continuous_at_one() {
        for n in [3, 10, 1000] {
            assert!((fpc_perron(1.0 + 1e-10, n) - n as f64).abs() < 1e-6 * n as f64);
        }
    }

    #[test]
    fn fpc_matches_oracle_below_one() {
        for x in [0.1, 0.5, 0.8] {
            for n in [3, 6, 9] {
                let m = FamilySpec::fpc(x, n).generate().unwrap();
                let oracle = perron_power(&m, PowerOptions::default()).unwrap().lambda_max;
                assert!((fpc_perron(x, n) - oracle).abs() < 1e-10 * oracle, "{x} {n}");
            }
        }
    }

    #[test]
    fn spectra_availability() {
        assert!(closed_form_spectrum(&FamilySpec::lpc(2.0, 4)).unwrap().is_none());
        assert!(closed_form_spectrum(&FamilySpec::fpc(2.0, 4)).unwrap().is_none());
        assert_eq!(closed_form_spectrum(&FamilySpec::fpc(1.0, 4)).unwrap().unwrap().len(), 4);
        assert_eq!(closed_form_spectrum(&FamilySpec::cpc(2.0, 6)).unwrap().unwrap().len(), 6);
        let s = closed_form_spectrum(&FamilySpec::ckpc(3.0, 7, 2)).unwrap().unwrap();
        assert!((s[0].re - ckpc_perron(3.0, 7, 2)).abs() < 1e-12);
    }
}
