//! Logarithmic negativity, Gaussian contangle and the residual (genuinely
//! tripartite) contangle, plus closed forms for the symmetric families.

mod closed_forms;
mod report;

pub use closed_forms::{
    basset_probe_residuals, class1_threshold, classify_noisy_ghzw, ghzw_two_mode_contangle,
    promiscuity_predicate, residual_contangle_basset, residual_contangle_ghzw,
    residual_contangle_noisy_ghzw, SeparabilityClass,
};
pub use report::{analyze, EntanglementReport};

use crate::error::{invalid_arg, Error, Result};
use crate::phase_space::{
    apply_symplectic, beam_splitter, partial_transpose, symplectic_eigenvalues, CovarianceMatrix,
    ModePartition,
};

/// Symplectic eigenvalues within this distance below one count as one.
const NU_FLOOR: f64 = 1e-10;

/// Tolerance for the block-wise symmetry tests.
pub const TOL_SYMMETRY: f64 = 1e-8;

/// `ln^2(x + sqrt(x^2 + 1))`.
pub(crate) fn arcsinh_sq(x: f64) -> f64 {
    (x + (x * x + 1.0).sqrt()).ln().powi(2)
}

/// Logarithmic negativity across `partition`, which must name every mode of `sigma`.
pub fn log_negativity(sigma: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    if !partition.covers(sigma.n_modes()) {
        return invalid_arg(format!(
            "partition {partition} does not cover the {} modes of the state",
            sigma.n_modes()
        ));
    }
    let pt = partial_transpose(sigma, partition.left())?;
    let spectrum = symplectic_eigenvalues(pt.matrix())?;
    let en: f64 = spectrum.values().iter().filter(|&&nu| nu < 1.0 - NU_FLOOR).map(|nu| -nu.ln()).sum();
    Ok(en.max(0.0))
}

/// Logarithmic negativity between the modes of `partition` after tracing out
/// every other mode.
pub fn reduced_log_negativity(sigma: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    let keep = partition.modes();
    let reduced = sigma.reduce(&keep)?;
    log_negativity(&reduced, &relabel(partition, &keep))
}

pub(crate) fn relabel(partition: &ModePartition, keep: &[usize]) -> ModePartition {
    let pos = |m: &usize| keep.iter().position(|k| k == m).expect("mode kept");
    ModePartition::new(partition.left().iter().map(pos).collect(), partition.right().iter().map(pos).collect())
        .expect("relabelled partition stays valid")
}

/// `|a_i - a_j| + 1 <= a_k <= a_i + a_j - 1` for every ordering, with a
/// relative slack of 1e-9 for round-off in computed mixednesses.
pub fn triangle_check(a1: f64, a2: f64, a3: f64) -> bool {
    let a = [a1, a2, a3];
    if a.iter().any(|x| !x.is_finite() || *x < 1.0 - 1e-12) {
        return false;
    }
    (0..3).all(|k| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let slack = 1e-9 * (a[i] + a[j]);
        (a[i] - a[j]).abs() + 1.0 <= a[k] + slack && a[k] <= a[i] + a[j] - 1.0 + slack
    })
}

fn is_pure(sigma: &CovarianceMatrix) -> Result<bool> {
    let spectrum = symplectic_eigenvalues(sigma.matrix())?;
    Ok(spectrum.max() - 1.0 <= 1e-7)
}

/// Contangle of a pure state across `partition`: the squared logarithmic negativity.
pub fn contangle_pure_bipartition(sigma: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    if !is_pure(sigma)? {
        return Err(Error::InvalidState("contangle of a bipartition requires a pure state".into()));
    }
    Ok(log_negativity(sigma, partition)?.powi(2))
}

/// True when both modes of a two-mode state have the same local determinant,
/// i.e. the state is symmetric up to local symplectic operations.
pub fn is_locally_symmetric(sigma: &CovarianceMatrix) -> bool {
    if sigma.n_modes() != 2 {
        return false;
    }
    let (d1, d2) = (sigma.block(0, 0).determinant(), sigma.block(1, 1).determinant());
    (d1 - d2).abs() <= TOL_SYMMETRY * d1.abs().max(d2.abs()).max(1.0)
}

/// Gaussian contangle of a symmetric two-mode state (squared log-negativity).
pub fn contangle_symmetric_two_mode(sigma: &CovarianceMatrix) -> Result<f64> {
    if sigma.n_modes() != 2 {
        return invalid_arg("expected a two-mode state");
    }
    if !is_locally_symmetric(sigma) {
        return Err(Error::UnsupportedState(
            "contangle of a nonsymmetric two-mode mixed state has no closed form here".into(),
        ));
    }
    let part = ModePartition::new(vec![0], vec![1])?;
    Ok(log_negativity(sigma, &part)?.powi(2))
}

/// Result of concentrating the entanglement of a bisymmetric state.
#[derive(Debug, Clone, PartialEq)]
pub struct Localized {
    /// Probe mode followed by the mode that collects the entanglement.
    pub pair: CovarianceMatrix,
    /// The mode left uncorrelated with the other two.
    pub decoupled: CovarianceMatrix,
}

/// Interferes the two non-probe modes on a balanced beam splitter. For a state
/// invariant under their exchange one output mode decouples entirely.
pub fn unitary_localization(sigma: &CovarianceMatrix, probe: usize) -> Result<Localized> {
    if sigma.n_modes() != 3 {
        return invalid_arg("unitary localization is implemented for three-mode states");
    }
    sigma.check_mode(probe)?;
    let others: Vec<usize> = (0..3).filter(|&m| m != probe).collect();
    let (j, k) = (others[0], others[1]);
    let tol = TOL_SYMMETRY * sigma.matrix().amax().max(1.0);
    if !sigma.is_swap_invariant(j, k, tol) {
        return Err(Error::UnsupportedState(format!(
            "state is not symmetric under exchange of modes {} and {}",
            j + 1,
            k + 1
        )));
    }
    let out = apply_symplectic(sigma, &beam_splitter(j, k, 0.5, 3)?)?;
    let cross = out.block(probe, k).amax().max(out.block(j, k).amax());
    if cross > tol {
        return Err(Error::NumericalDomain(format!("localized mode failed to decouple ({cross:.3e})")));
    }
    Ok(Localized { pair: out.reduce(&[probe, j])?, decoupled: out.reduce(&[k])? })
}

/// Gaussian contangle `G(i|jk)` for a three-mode state, from the pure-state
/// formula or, for mixed bisymmetric states, through unitary localization.
pub fn one_vs_two_contangle(sigma: &CovarianceMatrix, probe: usize) -> Result<f64> {
    let part = ModePartition::probe(probe, sigma.n_modes())?;
    if is_pure(sigma)? {
        return contangle_pure_bipartition(sigma, &part);
    }
    let local = unitary_localization(sigma, probe)?;
    contangle_symmetric_two_mode(&local.pair)
}

/// Residual Gaussian contangle `min_i [G(i|jk) - G(i|j) - G(i|k)]` over the
/// probes for which every term has a computable closed form.
pub fn residual_gaussian_contangle(sigma: &CovarianceMatrix) -> Result<f64> {
    if sigma.n_modes() != 3 {
        return invalid_arg("residual contangle is defined for three-mode states");
    }
    let mut best: Option<f64> = None;
    let mut last_err = None;
    for probe in 0..3 {
        let attempt = (|| -> Result<f64> {
            let mut value = one_vs_two_contangle(sigma, probe)?;
            for other in (0..3).filter(|&m| m != probe) {
                let (lo, hi) = (probe.min(other), probe.max(other));
                value -= contangle_symmetric_two_mode(&sigma.reduce(&[lo, hi])?)?;
            }
            Ok(value)
        })();
        match attempt {
            Ok(v) => best = Some(best.map_or(v, |b: f64| b.min(v))),
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.expect("three probes tried"))
}
