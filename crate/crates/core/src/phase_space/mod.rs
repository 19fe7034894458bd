//! Phase-space representation of zero-mean Gaussian states.
//!
//! Quadratures are ordered `(x1, p1, x2, p2, ...)` and the vacuum has the
//! identity as covariance matrix, so that `[X_i, X_j] = 2 i Omega_ij`.
//! Mode indices in the Rust API are zero-based; partition labels such as
//! `"1|23"` use the one-based mode labels of the physics literature.

mod conditioning;
mod covariance;
mod partition;
mod spectrum;
mod symplectic;

pub use conditioning::condition_on_homodyne;
pub use covariance::CovarianceMatrix;
pub use partition::ModePartition;
pub use spectrum::{partial_transpose, symplectic_eigenvalues, SymplecticSpectrum};
pub use symplectic::{
    apply_symplectic, beam_splitter, phase_rotation, squeezer, symplectic_form,
    two_mode_standard_form, SymplecticMatrix,
};

use crate::error::{invalid_arg, Result};

/// Absolute symmetry tolerance, scaled by the largest entry when it exceeds one.
pub const TOL_SYM: f64 = 1e-10;

/// Tolerance on eigenvalues for the uncertainty relation `sigma + i Omega >= 0`.
pub const TOL_PHYS: f64 = 1e-9;

/// Robertson-Schroedinger check: true iff every symplectic eigenvalue is at
/// least `1 - tol`. Matrices that are not positive definite are unphysical.
pub fn check_physical(sigma: &CovarianceMatrix, tol: f64) -> bool {
    match symplectic_eigenvalues(sigma.matrix()) {
        Ok(spectrum) => spectrum.min() >= 1.0 - tol,
        Err(_) => false,
    }
}

/// Noise figure in decibels, `10 log10(value)`.
pub fn to_decibels(value: f64) -> Result<f64> {
    if !(value > 0.0) || !value.is_finite() {
        return invalid_arg(format!("decibel conversion needs a positive value, got {value}"));
    }
    Ok(10.0 * value.log10())
}

/// Inverse of [`to_decibels`].
pub fn from_decibels(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
