use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::matrix::CirculantRow;

/// Eigenvalues `lambda_m = sum_k c_k exp(-2 pi i m k / n)` for `m = 0..n`.
///
/// `m = 0` is the row sum. The product `m * k` is reduced modulo `n` before
/// forming the angle, so each term uses an angle in `[0, 2 pi)`.
pub fn circulant_spectrum(row: &CirculantRow) -> Vec<Complex64> {
    let c = row.coefficients();
    let n = c.len();
    (0..n)
        .map(|m| {
            c.iter()
                .enumerate()
                .map(|(k, &ck)| {
                    let angle = -TAU * ((m * k) % n) as f64 / n as f64;
                    Complex64::from_polar(ck, angle)
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_row() {
        let eig = circulant_spectrum(&CirculantRow::new(vec![1.0; 3]).unwrap());
        assert!((eig[0] - Complex64::new(3.0, 0.0)).norm() < 1e-14);
        assert!(eig[1].norm() < 1e-14);
        assert!(eig[2].norm() < 1e-14);
    }

    #[test]
    fn layer_cake_five() {
        let eig = circulant_spectrum(&CirculantRow::new(vec![1.0, 2.0, 0.5, 2.0, 0.5]).unwrap());
        assert!((eig[0].re - 6.0).abs() < 1e-12 && eig[0].im.abs() < 1e-12);
        for z in &eig[1..] {
            assert!((z.re + 0.25).abs() < 1e-12, "{z}");
            assert!(z.im.abs() > 0.1);
        }
        // conjugate pairs: m and n - m
        assert!((eig[1] - eig[4].conj()).norm() < 1e-12);
        assert!((eig[2] - eig[3].conj()).norm() < 1e-12);
    }

    #[test]
    fn single_offset_five() {
        let eig = circulant_spectrum(&CirculantRow::new(vec![1.0, 2.0, 1.0, 1.0, 0.5]).unwrap());
        assert!((eig[0].re - 5.5).abs() < 1e-12);
        let rest: Complex64 = eig[1..].iter().sum();
        assert!((rest - Complex64::new(-0.5, 0.0)).norm() < 1e-12);
    }
}
