use nalgebra::DMatrix;
use serde::Serialize;

use super::symplectic::omega;
use super::CovarianceMatrix;
use crate::error::{invalid_arg, Error, Result};

/// Symplectic eigenvalues, sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymplecticSpectrum {
    values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }
}

/// Symplectic spectrum of a positive definite symmetric `2N x 2N` matrix.
///
/// Computed as the singular values of `sigma^{1/2} Omega sigma^{1/2}`, an
/// antisymmetric matrix whose singular values come in equal pairs `nu_k`.
pub fn symplectic_eigenvalues(sigma: &DMatrix<f64>) -> Result<SymplecticSpectrum> {
    let dim = sigma.nrows();
    if dim == 0 || !dim.is_multiple_of(2) || sigma.ncols() != dim {
        return invalid_arg(format!("expected a 2N x 2N matrix, got {:?}", sigma.shape()));
    }
    let eig = sigma.clone().symmetric_eigen();
    let lmax = eig.eigenvalues.amax();
    let lmin = eig.eigenvalues.min();
    if !(lmin > 1e-14 * lmax.max(1.0)) {
        return Err(Error::NumericalDomain(format!(
            "matrix is not positive definite (smallest eigenvalue {lmin:.3e})"
        )));
    }
    let root = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
        * eig.eigenvectors.transpose();
    let m = &root * omega(dim / 2) * &root;
    // singular values keep an absolute error of order eps * nu_max; going
    // through m^T m instead would square the conditioning
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(f64::total_cmp);
    let nu_max = sv[sv.len() - 1];
    let mut values = Vec::with_capacity(dim / 2);
    for pair in sv.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        if (a - b).abs() > 1e-8 * b.max(1.0) + 1e-12 * nu_max {
            return Err(Error::NumericalDomain(format!(
                "symplectic eigenvalues failed to pair ({a:.12e} vs {b:.12e})"
            )));
        }
        values.push(0.5 * (a + b));
    }
    Ok(SymplecticSpectrum { values })
}

/// Flips the sign of the momentum rows and columns of the given modes.
pub fn partial_transpose(sigma: &CovarianceMatrix, modes: &[usize]) -> Result<CovarianceMatrix> {
    if modes.is_empty() {
        return invalid_arg("partial transposition needs at least one mode");
    }
    let mut m = sigma.matrix().clone();
    for &mode in modes {
        sigma.check_mode(mode)?;
        let p = 2 * mode + 1;
        m.row_mut(p).neg_mut();
        m.column_mut(p).neg_mut();
    }
    Ok(CovarianceMatrix::symmetrized(m))
}
