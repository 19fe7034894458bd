use nalgebra::{DMatrix, Matrix2, Vector2};

use super::CovarianceMatrix;
use crate::error::{invalid_arg, Result};

/// Covariance of the unmeasured modes after homodyne detection of
/// `cos(angle) x + sin(angle) p` on `measured_mode`.
///
/// Gaussian conditioning does not depend on the outcome, only on the
/// measured quadrature: `sigma_A - sigma_AB (P sigma_B P)^+ sigma_AB^T`.
pub fn condition_on_homodyne(
    sigma: &CovarianceMatrix,
    measured_mode: usize,
    angle: f64,
) -> Result<CovarianceMatrix> {
    let n = sigma.n_modes();
    if n < 2 {
        return invalid_arg("conditioning needs at least two modes");
    }
    sigma.check_mode(measured_mode)?;
    if !angle.is_finite() {
        return invalid_arg("quadrature angle must be finite");
    }
    let rest: Vec<usize> = (0..n).filter(|&m| m != measured_mode).collect();
    let sigma_a = sigma.reduce(&rest)?.into_matrix();
    let sigma_b = sigma.block(measured_mode, measured_mode);
    let cross = DMatrix::from_fn(2 * (n - 1), 2, |r, c| {
        let mode = rest[r / 2];
        sigma.matrix()[(2 * mode + r % 2, 2 * measured_mode + c)]
    });

    let d = Vector2::new(angle.cos(), angle.sin());
    let proj = d * d.transpose();
    let pinv = pseudo_inverse(&(proj * sigma_b * proj));
    let pinv = DMatrix::from_column_slice(2, 2, pinv.as_slice());
    let updated = sigma_a - &cross * pinv * cross.transpose();
    Ok(CovarianceMatrix::symmetrized(updated))
}

/// Moore-Penrose inverse of a symmetric 2x2 matrix with a relative rank cutoff of 1e-10.
fn pseudo_inverse(m: &Matrix2<f64>) -> Matrix2<f64> {
    let eig = m.symmetric_eigen();
    let largest = eig.eigenvalues.amax();
    let inv = eig.eigenvalues.map(|l| if l.abs() > 1e-10 * largest { 1.0 / l } else { 0.0 });
    eig.eigenvectors * Matrix2::from_diagonal(&inv) * eig.eigenvectors.transpose()
}
