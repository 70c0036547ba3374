//! Numerical tolerances shared across the crate.
//!
//! All matrices here are at most 8x8 with entries of order one, so these are
//! absolute tolerances.

/// Maximum `|M_ij - conj(M_ji)|` accepted for a Hermitian matrix.
pub const HERMITIAN: f64 = 1e-12;

/// Maximum `|Tr(rho) - 1|` accepted for a density matrix.
pub const TRACE: f64 = 1e-12;

/// Smallest eigenvalue accepted for a positive semidefinite matrix.
pub const PSD: f64 = -1e-10;

/// Agreement between spectral quantities and their exact counterparts.
pub const SPECTRAL: f64 = 1e-10;

/// Negativities in `[-NEGATIVITY_CLIP, 0)` are reported as zero.
pub const NEGATIVITY_CLIP: f64 = 1e-12;

/// Below this value of `C = 4 p_-` the minus branch is treated as absent.
pub const DEGENERATE_BRANCH: f64 = 1e-14;

/// Baselines smaller than this make a percentage difference meaningless.
pub const BASELINE_FLOOR: f64 = 1e-12;
