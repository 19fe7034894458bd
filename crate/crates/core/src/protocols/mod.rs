//! Coherent-state teleportation through Gaussian resources: two-party
//! fidelity, the three-party network, and 1 -> 2 telecloning.

mod network;
mod telecloning;

pub use network::{
    assisted_network_fidelity, entanglement_of_teleportation, et_from_gres, f2_reduced_optimal,
    f2_unitary_localized_optimal, gres_from_et, network_report, optimal_network_fidelity_ghzw,
};
pub use telecloning::{
    asymmetric_feasibility, optimal_asymmetric_family, telecloning_asymmetric_fidelities, telecloning_report,
    telecloning_symmetric_fidelity, TelecloningReport, TelecloningWindow,
};

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_arg, Error, Result};
use crate::optimize::nelder_mead;
use crate::phase_space::{apply_symplectic, phase_rotation, squeezer, CovarianceMatrix};

/// Best fidelity for coherent states without entanglement.
pub const CLASSICAL_THRESHOLD: f64 = 0.5;

/// Best fidelity of each clone for Gaussian symmetric 1 -> 2 cloning.
pub const NO_CLONING_THRESHOLD: f64 = 2.0 / 3.0;

/// Guard band for the strict threshold comparisons in reports.
const GUARD: f64 = 1e-12;

pub fn classical_threshold() -> f64 {
    CLASSICAL_THRESHOLD
}

pub fn no_cloning_threshold() -> f64 {
    NO_CLONING_THRESHOLD
}

pub fn beats_classical(f: f64) -> bool {
    f > CLASSICAL_THRESHOLD + GUARD
}

pub fn beats_no_cloning(f: f64) -> bool {
    f > NO_CLONING_THRESHOLD + GUARD
}

/// Fidelity of one teleportation run. Modes are reported with one-based labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub fidelity: f64,
    pub sender: usize,
    pub receivers: Vec<usize>,
    pub beats_classical: bool,
    pub beats_no_cloning: bool,
    pub resource: String,
}

impl FidelityReport {
    pub fn new(fidelity: f64, sender: usize, receivers: Vec<usize>, resource: impl Into<String>) -> Self {
        Self {
            fidelity,
            sender,
            receivers,
            beats_classical: beats_classical(fidelity),
            beats_no_cloning: beats_no_cloning(fidelity),
            resource: resource.into(),
        }
    }
}

/// Teleportation fidelity `2 / sqrt(det Sigma)` with
/// `Sigma = 2 sigma_in + Z sigma_a Z + sigma_b + Z eps + eps^T Z`, `Z = diag(-1, 1)`.
/// Mode 1 of `sigma_ab` is the sender's, mode 2 the receiver's.
pub fn teleport_fidelity(sigma_in: &CovarianceMatrix, sigma_ab: &CovarianceMatrix) -> Result<f64> {
    if sigma_in.n_modes() != 1 || sigma_ab.n_modes() != 2 {
        return invalid_arg("teleportation needs a one-mode input and a two-mode resource");
    }
    fidelity_blocks(&sigma_in.block(0, 0), sigma_ab)
}

fn fidelity_blocks(sigma_in: &Matrix2<f64>, sigma_ab: &CovarianceMatrix) -> Result<f64> {
    let z = Matrix2::new(-1.0, 0.0, 0.0, 1.0);
    let eps = sigma_ab.block(0, 1);
    let big = sigma_in * 2.0 + z * sigma_ab.block(0, 0) * z + sigma_ab.block(1, 1) + z * eps + eps.transpose() * z;
    let det = big.determinant();
    if !(det > 0.0) {
        return Err(Error::NumericalDomain(format!("teleportation matrix has determinant {det}")));
    }
    Ok(2.0 / det.sqrt())
}

/// Coherent-state fidelity through `sigma_ab`.
pub fn coherent_fidelity(sigma_ab: &CovarianceMatrix) -> Result<f64> {
    fidelity_blocks(&Matrix2::identity(), sigma_ab)
}

/// Optimum over local operations on the resource.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizedFidelity {
    pub fidelity: f64,
    pub sender_squeezing: f64,
    pub receiver_squeezing: f64,
    /// Phase rotation applied to the receiver before squeezing, a multiple of pi/2.
    pub receiver_rotation: f64,
}

const SQUEEZE_RANGE: (f64, f64) = (-3.0, 3.0);

/// Coherent-state fidelity maximized over single-mode squeezers
/// `diag(e^u, e^-u)` on each side, `u` in `[-3, 3]`, after a receiver phase
/// rotation by a multiple of pi/2 (which aligns the sign of the correlations).
pub fn optimized_teleport_fidelity(sigma_ab: &CovarianceMatrix) -> Result<OptimizedFidelity> {
    if sigma_ab.n_modes() != 2 {
        return invalid_arg("expected a two-mode resource");
    }
    let mut best: Option<OptimizedFidelity> = None;
    for quarter in 0..4 {
        let theta = quarter as f64 * std::f64::consts::FRAC_PI_2;
        let rotated = apply_symplectic(sigma_ab, &phase_rotation(1, theta, 2)?)?;
        let (fidelity, u, v) = optimize_squeezings(&rotated);
        if best.is_none_or(|b| fidelity > b.fidelity) {
            best = Some(OptimizedFidelity {
                fidelity,
                sender_squeezing: u,
                receiver_squeezing: v,
                receiver_rotation: theta,
            });
        }
    }
    Ok(best.expect("four orientations tried"))
}

fn optimize_squeezings(sigma_ab: &CovarianceMatrix) -> (f64, f64, f64) {
    let eval = |u: f64, v: f64| -> f64 {
        let s = squeezer(0, u, 2).and_then(|a| a.compose(&squeezer(1, v, 2)?));
        s.and_then(|s| apply_symplectic(sigma_ab, &s))
            .and_then(|st| coherent_fidelity(&st))
            .unwrap_or(0.0)
    };
    let mut seed = (0.0, 0.0, eval(0.0, 0.0));
    for i in 0..7 {
        for j in 0..7 {
            let (u, v) = (-3.0 + i as f64, -3.0 + j as f64);
            let f = eval(u, v);
            if f > seed.2 {
                seed = (u, v, f);
            }
        }
    }
    let bounds = [SQUEEZE_RANGE, SQUEEZE_RANGE];
    let best = nelder_mead(|x| -eval(x[0], x[1]), &[seed.0, seed.1], 0.25, &bounds, 1e-15, 2000);
    if -best.value > seed.2 {
        (-best.value, best.x[0], best.x[1])
    } else {
        (seed.2, seed.0, seed.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{basset_hound, two_mode_squeezed};
    use approx::assert_abs_diff_eq;

    #[test]
    fn vacuum_resource_is_classical() {
        let f = teleport_fidelity(&CovarianceMatrix::vacuum(1), &CovarianceMatrix::vacuum(2)).unwrap();
        assert_abs_diff_eq!(f, 0.5, epsilon = 1e-15);
        assert!(!beats_classical(f));
        assert!(teleport_fidelity(&CovarianceMatrix::vacuum(2), &CovarianceMatrix::vacuum(2)).is_err());
    }

    #[test]
    fn squeezed_resource() {
        for r in [0.3, 1.0] {
            let f = coherent_fidelity(&two_mode_squeezed(r).unwrap()).unwrap();
            assert_abs_diff_eq!(f, 1.0 / (1.0 + (-2.0 * r).exp()), epsilon = 1e-12);
        }
        assert!(coherent_fidelity(&two_mode_squeezed(5.0).unwrap()).unwrap() > 0.999);
    }

    #[test]
    fn basset_reduction_matches_symmetric_telecloning() {
        for a in [1.5, 3.0, 6.0] {
            let red = basset_hound(a).unwrap().reduce(&[0, 1]).unwrap();
            let f = coherent_fidelity(&red).unwrap();
            assert_abs_diff_eq!(f, telecloning_symmetric_fidelity(a).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn optimization_undoes_local_squeezing() {
        let base = two_mode_squeezed(0.6).unwrap();
        let skew = squeezer(0, 1.2, 2).unwrap().compose(&squeezer(1, -0.5, 2).unwrap()).unwrap();
        let messy = apply_symplectic(&base, &skew).unwrap();
        let opt = optimized_teleport_fidelity(&messy).unwrap();
        assert_abs_diff_eq!(opt.fidelity, coherent_fidelity(&base).unwrap(), epsilon = 1e-9);
    }

    #[test]
    fn separable_resources_stay_classical() {
        for (x, y) in [(2.0, 0.7), (0.3, 5.0)] {
            let a = CovarianceMatrix::single_mode(x, 1.0 / x * 1.5).unwrap();
            let b = CovarianceMatrix::single_mode(y, 1.0 / y).unwrap();
            let f = coherent_fidelity(&a.tensor(&b)).unwrap();
            assert!(f <= 0.5 + 1e-9);
        }
    }

    #[test]
    fn report_flags() {
        let r = FidelityReport::new(0.5, 1, vec![2], "vacuum");
        assert!(!r.beats_classical);
        let r = FidelityReport::new(2.0 / 3.0, 1, vec![2], "basset-hound");
        assert!(r.beats_classical && !r.beats_no_cloning);
        assert_eq!(classical_threshold(), 0.5);
        assert_eq!(no_cloning_threshold(), 2.0 / 3.0);
    }
}
