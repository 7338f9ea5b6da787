use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::matrix::PcMatrix;

/// Slack applied to disc membership tests.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

/// Closed disc `|z - center| <= radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GerschgorinDisc {
    pub center: Complex64,
    pub radius: f64,
}

impl GerschgorinDisc {
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius + CONTAINMENT_SLACK * self.radius.max(1.0)
    }

    /// Signed distance from the boundary circle (negative inside).
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        (z - self.center).norm() - self.radius
    }
}

/// One disc per distinct `(a_ii, R_i)`, sorted by radius.
pub fn gerschgorin_discs(m: &PcMatrix) -> Vec<GerschgorinDisc> {
    let mut discs: Vec<GerschgorinDisc> = Vec::new();
    for (i, row) in m.rows().enumerate() {
        let center = Complex64::new(row[i], 0.0);
        let radius: f64 = row.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| a).sum();
        let same = |d: &GerschgorinDisc| {
            (d.center - center).norm() <= 1e-12
                && (d.radius - radius).abs() <= 1e-12 * radius.max(1.0)
        };
        if !discs.iter().any(same) {
            discs.push(GerschgorinDisc { center, radius });
        }
    }
    discs.sort_by(|a, b| a.radius.total_cmp(&b.radius));
    discs
}

/// True iff every eigenvalue lies in the union of the closed discs.
pub fn spectrum_in_discs(eigs: &[Complex64], discs: &[GerschgorinDisc]) -> bool {
    eigs.iter().all(|&z| discs.iter().any(|d| d.contains(z)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cc, gen_lpc};

    #[test]
    fn layer_cake_odd_single_disc() {
        let d = gerschgorin_discs(&gen_lpc(2.0, 5).unwrap());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].center, Complex64::new(1.0, 0.0));
        assert_eq!(d[0].radius, 5.0);
        assert!(d[0].boundary_distance(Complex64::new(6.0, 0.0)).abs() < 1e-12);
    }

    #[test]
    fn layer_cake_even_two_discs() {
        let d = gerschgorin_discs(&gen_lpc(2.0, 4).unwrap());
        let radii: Vec<f64> = d.iter().map(|d| d.radius).collect();
        assert_eq!(radii, vec![3.0, 4.5]);
    }

    #[test]
    fn all_ones_disc() {
        let d = gerschgorin_discs(&gen_cc(4).unwrap());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].radius, 3.0);
    }

    #[test]
    fn membership() {
        let disc = GerschgorinDisc { center: Complex64::new(1.0, 0.0), radius: 2.0 };
        let eigs = [Complex64::new(3.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(spectrum_in_discs(&eigs, &[disc]));
        let disc = GerschgorinDisc { center: Complex64::new(1.0, 0.0), radius: 5.0 };
        assert!(!spectrum_in_discs(&[Complex64::new(10.0, 0.0)], &[disc]));
        assert!(spectrum_in_discs(&[], &[disc]));
    }
}
