//! Local thermal decoherence of multimode resources.
//!
//! Every mode sees its own bath with the same mean photon number, so a state
//! relaxes as `sigma(t) = e^{-gamma t} sigma0 + (1 - e^{-gamma t})(2 n_bar + 1) 1`.
//! Times are reported in units of `gamma t`.

use std::thread;

use serde::{Deserialize, Serialize};

use crate::entanglement::log_negativity;
use crate::error::{invalid_arg, Error, Result};
use crate::optimize::bisect;
use crate::phase_space::{partial_transpose, symplectic_eigenvalues, CovarianceMatrix, ModePartition};
use crate::protocols::{assisted_network_fidelity, CLASSICAL_THRESHOLD};
use crate::states::StateSpec;

/// Identical local baths, evaluated at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathParams {
    pub n_bar: f64,
    pub gamma: f64,
    pub t: f64,
}

impl BathParams {
    pub fn new(n_bar: f64, gamma: f64, t: f64) -> Result<Self> {
        let bath = Self { n_bar, gamma, t };
        bath.validate()?;
        Ok(bath)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n_bar >= 0.0) || !self.n_bar.is_finite() {
            return invalid_arg(format!("n_bar must be finite and >= 0, got {}", self.n_bar));
        }
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return invalid_arg(format!("gamma must be finite and > 0, got {}", self.gamma));
        }
        if !(self.t >= 0.0) {
            return invalid_arg(format!("evolution time must be >= 0, got {}", self.t));
        }
        Ok(())
    }

    /// The same baths at another time.
    pub fn at(&self, t: f64) -> Result<Self> {
        Self::new(self.n_bar, self.gamma, t)
    }

    pub fn gamma_t(&self) -> f64 {
        self.gamma * self.t
    }

    /// Variance of the bath's thermal state, `2 n_bar + 1`.
    pub fn bath_variance(&self) -> f64 {
        2.0 * self.n_bar + 1.0
    }
}

/// Evolves `sigma0` through the local thermal channel for time `bath.t`.
pub fn evolve_thermal(sigma0: &CovarianceMatrix, bath: &BathParams) -> Result<CovarianceMatrix> {
    bath.validate()?;
    let n = sigma0.n_modes();
    if bath.t.is_infinite() {
        return Ok(CovarianceMatrix::thermal(n, bath.n_bar));
    }
    let keep = (-bath.gamma_t()).exp();
    let mut m = sigma0.matrix() * keep;
    let add = (1.0 - keep) * bath.bath_variance();
    for k in 0..2 * n {
        m[(k, k)] += add;
    }
    CovarianceMatrix::new(m)
}

fn require_symmetric(spec: &StateSpec) -> Result<()> {
    if spec.is_fully_symmetric() {
        Ok(())
    } else {
        Err(Error::UnsupportedState(format!("the {} family is not fully symmetric", spec.family())))
    }
}

/// Maps `f` over `items` on scoped worker threads, keeping order.
fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|scope| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| scope.spawn(|| c.iter().map(&f).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Network fidelity (sender 1, receiver 2) of the decohered resource at each
/// time of `t_grid`. `bath.t` is ignored.
pub fn fidelity_decay_curve(spec: &StateSpec, bath: &BathParams, t_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    Ok(decay_table(spec, bath, t_grid)?.into_iter().map(|p| (p.t, p.fidelity)).collect())
}

/// One row of a decay table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayPoint {
    pub t: f64,
    pub gamma_t: f64,
    pub fidelity: f64,
    pub logneg_1_23: f64,
}

/// Fidelity and `1|23` log-negativity along `t_grid`.
pub fn decay_table(spec: &StateSpec, bath: &BathParams, t_grid: &[f64]) -> Result<Vec<DecayPoint>> {
    require_symmetric(spec)?;
    bath.validate()?;
    if let Some(t) = t_grid.iter().find(|t| !(**t >= 0.0) || !t.is_finite()) {
        return invalid_arg(format!("grid times must be finite and >= 0, got {t}"));
    }
    let sigma0 = spec.build()?;
    let cut: ModePartition = "1|23".parse()?;
    par_map(t_grid, |&t| {
        let b = bath.at(t)?;
        let sigma = evolve_thermal(&sigma0, &b)?;
        Ok(DecayPoint {
            t,
            gamma_t: b.gamma_t(),
            fidelity: assisted_network_fidelity(&sigma, 0, 1)?,
            logneg_1_23: log_negativity(&sigma, &cut)?,
        })
    })
    .into_iter()
    .collect()
}

const SCAN_STEPS_PER_UNIT: f64 = 4.0;
const CROSSING_TOL_GT: f64 = 1e-6;

/// First `t` in `(0, horizon]` at which `g` turns negative, located by a
/// coarse scan in `gamma t` followed by bisection to 1e-6 in `gamma t`.
fn first_root(gamma: f64, horizon: f64, mut g: impl FnMut(f64) -> f64) -> Option<f64> {
    let gt_max = gamma * horizon;
    let steps = ((gt_max * SCAN_STEPS_PER_UNIT).ceil() as usize).max(1);
    let mut prev = 0.0;
    if g(0.0) < 0.0 {
        return Some(0.0);
    }
    for k in 1..=steps {
        let gt = gt_max * k as f64 / steps as f64;
        if g(gt / gamma) < 0.0 {
            return bisect(|x| g(x / gamma), prev, gt, CROSSING_TOL_GT).map(|x| x / gamma);
        }
        prev = gt;
    }
    None
}

/// Time at which the network fidelity falls below the classical threshold,
/// searched on `(0, bath.t]`.
pub fn classical_crossing_time(spec: &StateSpec, bath: &BathParams) -> Result<Option<f64>> {
    require_symmetric(spec)?;
    bath.validate()?;
    let sigma0 = spec.build()?;
    let excess = |t: f64| -> f64 {
        bath.at(t)
            .and_then(|b| evolve_thermal(&sigma0, &b))
            .and_then(|s| assisted_network_fidelity(&s, 0, 1))
            .map_or(f64::NAN, |f| f - CLASSICAL_THRESHOLD)
    };
    Ok(first_root(bath.gamma, bath.t, excess))
}

/// Time at which the `1|23` cut becomes PPT (the smallest partially
/// transposed symplectic eigenvalue reaches 1), searched on `(0, bath.t]`.
pub fn entanglement_vanishing_time(spec: &StateSpec, bath: &BathParams) -> Result<Option<f64>> {
    bath.validate()?;
    let sigma0 = spec.build()?;
    let margin = |t: f64| -> f64 {
        bath.at(t)
            .and_then(|b| evolve_thermal(&sigma0, &b))
            .and_then(|s| partial_transpose(&s, &[0]))
            .and_then(|pt| symplectic_eigenvalues(pt.matrix()))
            .map_or(f64::NAN, |spec| 1.0 - spec.min())
    };
    Ok(first_root(bath.gamma, bath.t, margin))
}
