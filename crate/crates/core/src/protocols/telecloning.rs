use serde::{Deserialize, Serialize};

use super::{coherent_fidelity, FidelityReport};
use crate::entanglement::triangle_check;
use crate::error::{invalid_arg, Result};
use crate::phase_space::two_mode_standard_form;
use crate::states::StateSpec;

/// Clone fidelity of symmetric telecloning through a basset hound resource,
/// `4 / (3a - 2 sqrt 2 sqrt(a^2 - 1) + 5)`. Peaks at 2/3 for `a = 3`.
pub fn telecloning_symmetric_fidelity(a: f64) -> Result<f64> {
    if !(a >= 1.0) || !a.is_finite() {
        return invalid_arg(format!("local mixedness must be finite and >= 1, got {a}"));
    }
    Ok(4.0 / (3.0 * a - 2.0 * 2f64.sqrt() * (a * a - 1.0).sqrt() + 5.0))
}

fn fiasym(a1: f64, a2: f64, a3: f64) -> f64 {
    let root = (((a1 + a2 - a3).powi(2) - 1.0) * ((a1 + a2 + a3).powi(2) - 1.0) / (a1 * a2)).max(0.0).sqrt();
    let inner = -2.0 * a3 * a3 + 2.0 * a1 * a2 + 4.0 * (a1 + a2) + 3.0 * (a1 * a1 + a2 * a2)
        - (a1 + a2 + 2.0) * root
        + 2.0;
    2.0 / inner.sqrt()
}

/// Fidelities `(F_bob, F_claire)` of asymmetric telecloning from mode 1 to
/// modes 2 and 3 of the pure state with local mixednesses `(a1, a2, a3)`,
/// the resource being in standard form.
pub fn telecloning_asymmetric_fidelities(a1: f64, a2: f64, a3: f64) -> Result<(f64, f64)> {
    if !triangle_check(a1, a2, a3) {
        return invalid_arg(format!("({a1}, {a2}, {a3}) violates the triangle inequality"));
    }
    Ok((fiasym(a1, a2, a3), fiasym(a1, a3, a2)))
}

fn family_fidelity(a: f64, t: f64) -> f64 {
    let d = (a + 3.0).powi(2) + (a - 1.0).powi(2) * t * t + 2.0 * (a - 1.0) * (3.0 * a + 5.0) * t
        - 4.0 * ((a * a - 1.0) * t).sqrt() * (a + (a - 1.0) * t + 3.0);
    2.0 / d.sqrt()
}

/// Fidelities along the optimal asymmetric family `a2 = 1 + (a - 1) t`,
/// `a3 = a - a2 + 1`. Claire's value is Bob's with `t -> 1 - t`.
pub fn optimal_asymmetric_family(a: f64, t: f64) -> Result<(f64, f64)> {
    if !(a >= 1.0) || !a.is_finite() {
        return invalid_arg(format!("a must be finite and >= 1, got {a}"));
    }
    if !(0.0..=1.0).contains(&t) {
        return invalid_arg(format!("t must lie in [0, 1], got {t}"));
    }
    Ok((family_fidelity(a, t), family_fidelity(a, 1.0 - t)))
}

/// Range of resources for which one clone beats the no-cloning bound while
/// the other still beats the classical threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TelecloningWindow {
    pub a_min: f64,
    pub a_max: f64,
}

impl TelecloningWindow {
    pub fn new() -> Self {
        let root = (1.0 + 2f64.sqrt()).sqrt();
        let k = 2.0 * 2f64.sqrt();
        Self { a_min: k * (2.0 - root), a_max: k * (2.0 + root) }
    }

    pub fn contains(&self, a: f64) -> bool {
        (self.a_min..=self.a_max).contains(&a)
    }

    /// Smallest `t` with `F_bob >= 2/3`.
    pub fn t_min(&self, a: f64) -> f64 {
        (a - 2.0 * (a + 1.0).sqrt() + 2.0) / (a - 1.0)
    }

    /// Largest `t` with `F_claire >= 1/2`.
    pub fn t_max(&self, a: f64) -> f64 {
        2.0 * (2f64.sqrt() * (a + 1.0).sqrt() - 2.0) / (a - 1.0)
    }
}

impl Default for TelecloningWindow {
    fn default() -> Self {
        Self::new()
    }
}

/// The interval of `t` in which asymmetric telecloning beats both bounds,
/// or `None` outside the window of admissible `a`.
pub fn asymmetric_feasibility(a: f64) -> Option<(f64, f64)> {
    let w = TelecloningWindow::new();
    if !(a > 1.0) || !w.contains(a) {
        return None;
    }
    let (lo, hi) = (w.t_min(a), w.t_max(a));
    // at the window edges the two bounds meet up to round-off
    (lo <= hi + 1e-12).then_some((lo.min(hi), hi.max(lo)))
}

/// Both clone fidelities for a three-mode resource; mode 1 sends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TelecloningReport {
    pub local_mixedness: Vec<f64>,
    pub bob: FidelityReport,
    pub claire: FidelityReport,
}

/// Telecloning from mode 1 to modes 2 and 3, each reduced resource taken
/// in its two-mode standard form.
pub fn telecloning_report(spec: &StateSpec) -> Result<TelecloningReport> {
    let sigma = spec.build()?;
    if sigma.n_modes() != 3 {
        return invalid_arg("telecloning needs a three-mode resource");
    }
    let clone = |receiver: usize| -> Result<FidelityReport> {
        let pair = two_mode_standard_form(&sigma.reduce(&[0, receiver])?)?;
        Ok(FidelityReport::new(coherent_fidelity(&pair)?, 1, vec![receiver + 1], spec.family()))
    };
    Ok(TelecloningReport { local_mixedness: sigma.local_mixednesses(), bob: clone(1)?, claire: clone(2)? })
}
