//! Special-case pairwise-comparison (PC) matrices with Toeplitz structure.
//!
//! The crate builds the families whose off-diagonal entries are only `x` and
//! `1/x`, computes their Perron roots both numerically and in closed form,
//! and evaluates the inconsistency indices CI and Kii:
//!
//! * [`matrix`]: validated [`PcMatrix`] model, norms, structure detection;
//! * [`generators`]: CC, CPC, LPC, CkPC and FPC constructors;
//! * [`spectral`]: power iteration, circulant spectra, the cubic for CPC,
//!   closed-form Perron roots and Gerschgorin discs;
//! * [`indices`]: CI, Kii, closed forms and estimates, [`analyze`];
//! * [`hypothesis`]: the even-order layer-cake harness;
//! * [`verify`]: closed forms checked against the numerical oracle;
//! * [`io`]: CSV and JSON matrix files.
//!
//! ```
//! use pctoep_core::{gen_lpc, indices, perron_power, PowerOptions};
//!
//! let m = gen_lpc(2.0, 5).unwrap();
//! let root = perron_power(&m, PowerOptions::default()).unwrap();
//! assert!((root.lambda_max - 6.0).abs() < 1e-10);
//! assert!((indices::ci(root.lambda_max, 5).unwrap() - 0.25).abs() < 1e-10);
//! ```

pub mod error;
pub mod generators;
pub mod hypothesis;
pub mod indices;
pub mod io;
pub mod matrix;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use generators::{
    gen_cc, gen_ckpc, gen_cpc, gen_fpc, gen_lpc, FamilyKind, FamilySpec,
};
pub use hypothesis::{check_hypothesis, lpc_even_radii, monotonicity_probe, sweep_table, HypothesisRow};
pub use indices::{analyze, ci, kii, ConsistencyReport, FamilyCi};
pub use matrix::{CirculantRow, PcMatrix, Structure};
pub use num_complex::Complex64;
pub use spectral::{
    circulant_spectrum, closed_form_perron, cpc_spectrum, gerschgorin_discs, perron_power,
    spectrum_in_discs, GerschgorinDisc, PowerOptions, SpectralResult,
};
