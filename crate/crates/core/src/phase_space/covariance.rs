use std::fmt;

use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::TOL_SYM;
use crate::error::{invalid_arg, Error, Result};

/// Real symmetric `2N x 2N` covariance matrix of an N-mode Gaussian state.
///
/// Symmetry is the only invariant enforced on construction; physicality is a
/// checked property (see [`super::check_physical`]) because intermediate
/// objects such as partial transposes are legitimately unphysical.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Validates shape and symmetry, then stores the exactly symmetrized matrix.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols || rows == 0 || rows % 2 != 0 {
            return invalid_arg(format!(
                "covariance matrix must be square with even nonzero size, got {rows}x{cols}"
            ));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return invalid_arg("covariance matrix has non-finite entries");
        }
        let scale = entries.amax().max(1.0);
        let asym = (&entries - entries.transpose()).amax();
        if asym > TOL_SYM * scale {
            return invalid_arg(format!("covariance matrix is not symmetric (defect {asym:.3e})"));
        }
        Ok(Self::symmetrized(entries))
    }

    pub(crate) fn symmetrized(entries: DMatrix<f64>) -> Self {
        let entries = (&entries + entries.transpose()) * 0.5;
        Self { entries }
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self { entries: DMatrix::identity(2 * n_modes, 2 * n_modes) }
    }

    /// Product of identical thermal modes, `(2 nbar + 1) * identity`.
    pub fn thermal(n_modes: usize, n_bar: f64) -> Self {
        Self { entries: DMatrix::identity(2 * n_modes, 2 * n_modes) * (2.0 * n_bar + 1.0) }
    }

    /// Single mode with quadrature variances `(var_x, var_p)`.
    pub fn single_mode(var_x: f64, var_p: f64) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![var_x, var_p])))
    }

    pub fn n_modes(&self) -> usize {
        self.entries.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    /// The 2x2 block coupling modes `i` and `j` (`sigma_i` when `i == j`).
    pub fn block(&self, i: usize, j: usize) -> Matrix2<f64> {
        let b = self.entries.fixed_view::<2, 2>(2 * i, 2 * j);
        Matrix2::from(b)
    }

    pub fn det(&self) -> f64 {
        self.entries.determinant()
    }

    /// Global purity `1 / sqrt(det sigma)`.
    pub fn purity(&self) -> Result<f64> {
        let det = self.det();
        if det < 1.0 - super::TOL_PHYS {
            return Err(Error::InvalidState(format!(
                "det sigma = {det} is below one; not a physical state"
            )));
        }
        Ok(1.0 / det.sqrt())
    }

    /// Local mixedness `a_j = sqrt(det sigma_j)` of one mode.
    pub fn local_mixedness(&self, mode: usize) -> Result<f64> {
        self.check_mode(mode)?;
        let det = self.block(mode, mode).determinant();
        if det < 0.0 {
            return Err(Error::InvalidState(format!("mode {mode} has negative local determinant")));
        }
        Ok(det.sqrt())
    }

    pub fn local_mixednesses(&self) -> Vec<f64> {
        (0..self.n_modes()).map(|m| self.block(m, m).determinant().max(0.0).sqrt()).collect()
    }

    /// Direct sum: modes of `other` follow the modes of `self`.
    pub fn tensor(&self, other: &CovarianceMatrix) -> CovarianceMatrix {
        let (na, nb) = (self.entries.nrows(), other.entries.nrows());
        let mut out = DMatrix::zeros(na + nb, na + nb);
        out.view_mut((0, 0), (na, na)).copy_from(&self.entries);
        out.view_mut((na, na), (nb, nb)).copy_from(&other.entries);
        CovarianceMatrix { entries: out }
    }

    /// Principal submatrix on the kept modes, in the order given.
    pub fn reduce(&self, keep: &[usize]) -> Result<CovarianceMatrix> {
        if keep.is_empty() {
            return invalid_arg("reduction needs at least one mode to keep");
        }
        for (k, &m) in keep.iter().enumerate() {
            self.check_mode(m)?;
            if keep[..k].contains(&m) {
                return invalid_arg(format!("mode {m} listed twice in reduction"));
            }
        }
        let idx: Vec<usize> = keep.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let entries = DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.entries[(idx[r], idx[c])]);
        Ok(CovarianceMatrix { entries })
    }

    /// Relabels modes so that new mode `k` is old mode `order[k]`.
    pub fn permute_modes(&self, order: &[usize]) -> Result<CovarianceMatrix> {
        if order.len() != self.n_modes() {
            return invalid_arg("permutation must list every mode exactly once");
        }
        self.reduce(order)
    }

    /// True when exchanging modes `i` and `j` leaves the matrix invariant
    /// within `tol` (max-norm, block-wise).
    pub fn is_swap_invariant(&self, i: usize, j: usize, tol: f64) -> bool {
        let mut order: Vec<usize> = (0..self.n_modes()).collect();
        order.swap(i, j);
        match self.permute_modes(&order) {
            Ok(p) => (&p.entries - &self.entries).amax() <= tol,
            Err(_) => false,
        }
    }

    /// Invariance under every permutation of the modes.
    pub fn is_fully_symmetric(&self, tol: f64) -> bool {
        let n = self.n_modes();
        (1..n).all(|j| self.is_swap_invariant(0, j, tol))
    }

    pub(crate) fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes() {
            return invalid_arg(format!(
                "mode index {mode} out of range for a {}-mode state",
                self.n_modes()
            ));
        }
        Ok(())
    }
}

impl fmt::Display for CovarianceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries)
    }
}

#[derive(Serialize, Deserialize)]
struct CovarianceJson {
    n_modes: usize,
    entries: Vec<f64>,
}

impl Serialize for CovarianceMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dim = self.entries.nrows();
        let entries = (0..dim).flat_map(|r| (0..dim).map(move |c| (r, c)));
        let entries = entries.map(|(r, c)| self.entries[(r, c)]).collect();
        CovarianceJson { n_modes: self.n_modes(), entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CovarianceMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = CovarianceJson::deserialize(deserializer)?;
        let dim = 2 * raw.n_modes;
        if raw.n_modes == 0 || raw.entries.len() != dim * dim {
            return Err(serde::de::Error::custom(format!(
                "expected {} entries for {} modes, got {}",
                dim * dim,
                raw.n_modes,
                raw.entries.len()
            )));
        }
        let m = DMatrix::from_row_slice(dim, dim, &raw.entries);
        CovarianceMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn two_mode_squeezed(m: f64) -> CovarianceMatrix {
        let c = (m * m - 1.0).sqrt();
        #[rustfmt::skip]
        let e = DMatrix::from_row_slice(4, 4, &[
            m, 0.0, c, 0.0,
            0.0, m, 0.0, -c,
            c, 0.0, m, 0.0,
            0.0, -c, 0.0, m,
        ]);
        CovarianceMatrix::new(e).unwrap()
    }

    #[test]
    fn rejects_bad_shapes_and_asymmetry() {
        assert!(CovarianceMatrix::new(DMatrix::identity(3, 3)).is_err());
        assert!(CovarianceMatrix::new(DMatrix::zeros(0, 0)).is_err());
        let mut m = DMatrix::identity(2, 2);
        m[(0, 1)] = 1e-3;
        assert!(CovarianceMatrix::new(m).is_err());
    }

    #[test]
    fn purity_and_mixedness() {
        let vac = CovarianceMatrix::vacuum(2);
        assert_abs_diff_eq!(vac.purity().unwrap(), 1.0);
        assert_abs_diff_eq!(vac.local_mixedness(1).unwrap(), 1.0);
        assert!(vac.local_mixedness(2).is_err());
        let th = CovarianceMatrix::thermal(1, 0.5);
        assert_abs_diff_eq!(th.purity().unwrap(), 0.5, epsilon = 1e-14);
        let bad = CovarianceMatrix::new(DMatrix::identity(2, 2) * 0.5).unwrap();
        assert!(matches!(bad.purity(), Err(Error::InvalidState(_))));
    }

    #[test]
    fn tensor_and_reduce() {
        let a = two_mode_squeezed(2.0);
        let b = CovarianceMatrix::thermal(1, 1.0);
        let ab = a.tensor(&b);
        assert_eq!(ab.n_modes(), 3);
        assert_abs_diff_eq!(ab.purity().unwrap(), a.purity().unwrap() * b.purity().unwrap(), epsilon = 1e-12);
        assert_eq!(ab.reduce(&[0, 1]).unwrap(), a);
        assert_eq!(ab.reduce(&[2]).unwrap(), b);
        assert_eq!(ab.reduce(&[0, 1, 2]).unwrap(), ab);
        assert!(ab.reduce(&[]).is_err());
        assert!(ab.reduce(&[0, 0]).is_err());
        // allotment input: sigma_1 = sigma_2 = m 1, sigma_3 = 1
        assert_eq!(ab.block(0, 0), Matrix2::identity() * 2.0);
        assert_eq!(ab.block(1, 1), Matrix2::identity() * 2.0);
        assert_eq!(ab.block(0, 2), Matrix2::zeros());
    }

    #[test]
    fn json_round_trip() {
        let a = two_mode_squeezed(1.7);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with("{\"n_modes\":2,\"entries\":["));
        let back: CovarianceMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<CovarianceMatrix>(r#"{"n_modes":1,"entries":[1,0,0]}"#).is_err());
        assert!(serde_json::from_str::<CovarianceMatrix>(r#"{"n_modes":1,"entries":[1,0.5,0,1]}"#).is_err());
    }

    #[test]
    fn swap_symmetry() {
        let a = two_mode_squeezed(3.0);
        assert!(a.is_swap_invariant(0, 1, 1e-12));
        let skewed = a.tensor(&CovarianceMatrix::vacuum(1));
        assert!(!skewed.is_swap_invariant(0, 2, 1e-8));
        assert!(CovarianceMatrix::vacuum(3).is_fully_symmetric(0.0));
    }
}
