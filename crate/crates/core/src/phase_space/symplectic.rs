use nalgebra::{DMatrix, Matrix2};

use super::{CovarianceMatrix, TOL_SYM};
use crate::error::{invalid_arg, Error, Result};

/// Block-diagonal symplectic form `Omega = (+) [[0, 1], [-1, 0]]`.
pub fn symplectic_form(n_modes: usize) -> Result<DMatrix<f64>> {
    if n_modes == 0 {
        return invalid_arg("symplectic form needs at least one mode");
    }
    Ok(omega(n_modes))
}

pub(crate) fn omega(n_modes: usize) -> DMatrix<f64> {
    let mut o = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        o[(2 * k, 2 * k + 1)] = 1.0;
        o[(2 * k + 1, 2 * k)] = -1.0;
    }
    o
}

/// A real `2N x 2N` matrix with `S Omega S^T = Omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    matrix: DMatrix<f64>,
}

impl SymplecticMatrix {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return invalid_arg(format!("symplectic matrix must be 2N x 2N, got {rows}x{cols}"));
        }
        let s = Self { matrix };
        let defect = s.symplectic_defect();
        if !(defect < TOL_SYM) {
            return invalid_arg(format!("matrix is not symplectic (defect {defect:.3e})"));
        }
        Ok(s)
    }

    pub fn identity(n_modes: usize) -> Self {
        Self { matrix: DMatrix::identity(2 * n_modes, 2 * n_modes) }
    }

    /// Embeds a 2x2 unit-determinant matrix acting on one mode.
    pub fn local(mode: usize, block: Matrix2<f64>, n_modes: usize) -> Result<Self> {
        check_index(mode, n_modes)?;
        let det = block.determinant();
        if (det - 1.0).abs() > TOL_SYM * block.amax().max(1.0).powi(2) {
            return invalid_arg(format!("single-mode block has determinant {det}, expected 1"));
        }
        let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
        m.fixed_view_mut::<2, 2>(2 * mode, 2 * mode).copy_from(&block);
        Ok(Self { matrix: m })
    }

    pub fn n_modes(&self) -> usize {
        self.matrix.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `self * other`: `other` acts first.
    pub fn compose(&self, other: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        if self.n_modes() != other.n_modes() {
            return invalid_arg("cannot compose symplectic matrices of different sizes");
        }
        Ok(Self { matrix: &self.matrix * &other.matrix })
    }

    /// `S^{-1} = -Omega S^T Omega`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let o = omega(self.n_modes());
        Self { matrix: -(&o * self.matrix.transpose() * &o) }
    }

    /// `max |S Omega S^T - Omega|`.
    pub fn symplectic_defect(&self) -> f64 {
        let o = omega(self.n_modes());
        (&self.matrix * &o * self.matrix.transpose() - o).amax()
    }
}

fn check_index(mode: usize, n_modes: usize) -> Result<()> {
    if mode >= n_modes {
        return invalid_arg(format!("mode index {mode} out of range for {n_modes} modes"));
    }
    Ok(())
}

/// Beam splitter of transmissivity `tau` between modes `i` and `j`.
///
/// On `(x_i, p_i, x_j, p_j)` it acts as `[[c, s], [s, -c]] (x) 1_2` with
/// `c = sqrt(tau)`, `s = sqrt(1 - tau)`.
pub fn beam_splitter(i: usize, j: usize, tau: f64, n_modes: usize) -> Result<SymplecticMatrix> {
    check_index(i, n_modes)?;
    check_index(j, n_modes)?;
    if i == j {
        return invalid_arg("beam splitter needs two distinct modes");
    }
    if !(0.0..=1.0).contains(&tau) {
        return invalid_arg(format!("transmissivity {tau} outside [0, 1]"));
    }
    let (c, s) = (tau.sqrt(), (1.0 - tau).sqrt());
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for q in 0..2 {
        let (a, b) = (2 * i + q, 2 * j + q);
        m[(a, a)] = c;
        m[(a, b)] = s;
        m[(b, a)] = s;
        m[(b, b)] = -c;
    }
    Ok(SymplecticMatrix { matrix: m })
}

/// Single-mode squeezer `diag(e^r, e^-r)`.
pub fn squeezer(mode: usize, r: f64, n_modes: usize) -> Result<SymplecticMatrix> {
    check_index(mode, n_modes)?;
    if !r.is_finite() {
        return invalid_arg("squeezing must be finite");
    }
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    m[(2 * mode, 2 * mode)] = r.exp();
    m[(2 * mode + 1, 2 * mode + 1)] = (-r).exp();
    Ok(SymplecticMatrix { matrix: m })
}

/// Phase-space rotation `x -> cos t x + sin t p`, `p -> -sin t x + cos t p`.
pub fn phase_rotation(mode: usize, theta: f64, n_modes: usize) -> Result<SymplecticMatrix> {
    SymplecticMatrix::local(mode, rotation(theta), n_modes)
}

pub(crate) fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, s, -s, c)
}

/// `S sigma S^T`, exactly symmetrized.
pub fn apply_symplectic(sigma: &CovarianceMatrix, s: &SymplecticMatrix) -> Result<CovarianceMatrix> {
    if sigma.n_modes() != s.n_modes() {
        return invalid_arg(format!(
            "state has {} modes, symplectic map acts on {}",
            sigma.n_modes(),
            s.n_modes()
        ));
    }
    Ok(CovarianceMatrix::symmetrized(&s.matrix * sigma.matrix() * s.matrix.transpose()))
}

/// Brings a two-mode CM to standard form by local symplectic operations:
/// `sigma_j = b_j 1` and `eps = diag(c_+, c_-)` with `c_+ >= |c_-|`, `c_+ >= 0`.
pub fn two_mode_standard_form(sigma: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    if sigma.n_modes() != 2 {
        return invalid_arg("standard form is defined here for two-mode states only");
    }
    let mut blocks = [Matrix2::zeros(); 2];
    for (k, blk) in blocks.iter_mut().enumerate() {
        let local = sigma.block(k, k);
        *blk = normalizing_block(&local)?;
    }
    let s1 = SymplecticMatrix::local(0, blocks[0], 2)?;
    let s2 = SymplecticMatrix::local(1, blocks[1], 2)?;
    let squeezed = apply_symplectic(sigma, &s1.compose(&s2)?)?;

    let eps = squeezed.block(0, 1);
    let svd = eps.svd(true, true);
    let (mut u, mut vt) = (svd.u.unwrap(), svd.v_t.unwrap());
    if u.determinant() < 0.0 {
        u.set_column(1, &(-u.column(1)));
    }
    if vt.determinant() < 0.0 {
        vt.set_row(1, &(-vt.row(1)));
    }
    // u^T eps vt^T is diagonal with the larger singular value first and positive
    let r1 = SymplecticMatrix::local(0, u.transpose(), 2)?;
    let r2 = SymplecticMatrix::local(1, vt, 2)?;
    apply_symplectic(&squeezed, &r1.compose(&r2)?)
}

/// Unit-determinant `S` with `S A S^T = sqrt(det A) 1` for a positive 2x2 `A`.
fn normalizing_block(a: &Matrix2<f64>) -> Result<Matrix2<f64>> {
    let det = a.determinant();
    if !(det > 0.0) || a[(0, 0)] <= 0.0 {
        return Err(Error::NumericalDomain("local block is not positive definite".into()));
    }
    let eig = a.symmetric_eigen();
    let inv_sqrt = eig.eigenvectors
        * Matrix2::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()))
        * eig.eigenvectors.transpose();
    Ok(inv_sqrt * det.sqrt().sqrt())
}
