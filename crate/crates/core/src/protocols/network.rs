use super::{optimized_teleport_fidelity, FidelityReport, CLASSICAL_THRESHOLD};
use crate::entanglement::{residual_contangle_ghzw, TOL_SYMMETRY};
use crate::error::{invalid_arg, Error, Result};
use crate::optimize::{bisect, golden_max};
use crate::phase_space::{condition_on_homodyne, CovarianceMatrix};
use crate::states::StateSpec;

/// Normalized excess fidelity `max(0, (F - 1/2) / (1 - 1/2))`. The classical
/// threshold does not depend on the number of parties `n_parties`.
pub fn entanglement_of_teleportation(fidelity: f64, n_parties: usize) -> Result<f64> {
    if !(fidelity > 0.0 && fidelity <= 1.0) {
        return invalid_arg(format!("fidelity must lie in (0, 1], got {fidelity}"));
    }
    if n_parties < 2 {
        return invalid_arg("teleportation needs at least two parties");
    }
    Ok(((fidelity - CLASSICAL_THRESHOLD) / (1.0 - CLASSICAL_THRESHOLD)).max(0.0))
}

/// Residual contangle of the GHZ/W resource whose optimal network achieves
/// entanglement of teleportation `e_t`.
pub fn gres_from_et(e_t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&e_t) {
        return invalid_arg(format!("entanglement of teleportation must be in [0, 1), got {e_t}"));
    }
    Ok(gres_from_et_raw(e_t))
}

fn gres_from_et_raw(e: f64) -> f64 {
    let q = e * (e + 4.0) + 1.0;
    let num = 2.0 * 2f64.sqrt() * e - (e + 1.0) * (e * e + 1.0).sqrt();
    let ratio = num / ((e - 1.0) * q.sqrt());
    if !(ratio > 0.0) {
        // only reachable through round-off as e -> 1, where the value diverges
        return f64::INFINITY;
    }
    ratio.ln().powi(2) - 0.5 * ((e * e + 1.0) / q).ln().powi(2)
}

const ET_MAX: f64 = 1.0 - 1e-12;

/// Inverse of [`gres_from_et`] by bisection on `[0, 1 - 1e-12]`; saturates
/// at the upper end of the bracket.
pub fn et_from_gres(g: f64) -> Result<f64> {
    if !(g >= 0.0) {
        return invalid_arg(format!("residual contangle must be non-negative, got {g}"));
    }
    if g == 0.0 {
        return Ok(0.0);
    }
    if gres_from_et_raw(ET_MAX) <= g {
        return Ok(ET_MAX);
    }
    Ok(bisect(|e| gres_from_et_raw(e) - g, 0.0, ET_MAX, 1e-15).expect("bracketed"))
}

/// Optimal three-party network fidelity `(1 + E_T) / 2` on a GHZ/W state
/// with local mixedness `a`.
pub fn optimal_network_fidelity_ghzw(a: f64) -> Result<f64> {
    Ok((1.0 + et_from_gres(residual_contangle_ghzw(a)?)?) / 2.0)
}

fn check_squeezing(r_bar: f64) -> Result<()> {
    if !(r_bar >= 0.0) || !r_bar.is_finite() {
        return invalid_arg(format!("average squeezing must be finite and >= 0, got {r_bar}"));
    }
    Ok(())
}

/// Optimal fidelity through the two-mode reduction of a GHZ/W state, the
/// third party having been traced out.
pub fn f2_reduced_optimal(r_bar: f64) -> Result<f64> {
    check_squeezing(r_bar)?;
    Ok(3.0 / (3.0 + (3.0 + 6.0 * (-4.0 * r_bar).exp()).sqrt()))
}

/// Optimal fidelity after all GHZ/W entanglement has been localized on the
/// sender-receiver pair.
pub fn f2_unitary_localized_optimal(r_bar: f64) -> Result<f64> {
    check_squeezing(r_bar)?;
    let c = (4.0 * r_bar).cosh();
    Ok(1.0 / (((4.0 * c + 5.0).sqrt() - 2.0 * (c - 1.0).sqrt()) / 3.0 + 1.0))
}

/// Network fidelity computed directly: the third party measures a homodyne
/// quadrature (angle optimized), then sender and receiver apply the best
/// local squeezings. Modes are zero-based.
pub fn assisted_network_fidelity(sigma: &CovarianceMatrix, sender: usize, receiver: usize) -> Result<f64> {
    if sigma.n_modes() != 3 {
        return invalid_arg("the teleportation network uses a three-mode resource");
    }
    sigma.check_mode(sender)?;
    sigma.check_mode(receiver)?;
    if sender == receiver {
        return invalid_arg("sender and receiver must differ");
    }
    if !sigma.is_fully_symmetric(TOL_SYMMETRY * sigma.matrix().amax().max(1.0)) {
        return Err(Error::UnsupportedState("network fidelity requires a fully symmetric resource".into()));
    }
    let helper = 3 - sender - receiver;
    // conditioning keeps the remaining modes in increasing order
    let order: &[usize] = if sender < receiver { &[0, 1] } else { &[1, 0] };
    let fidelity_at = |theta: f64| -> f64 {
        condition_on_homodyne(sigma, helper, theta)
            .and_then(|c| c.permute_modes(order))
            .and_then(|pair| optimized_teleport_fidelity(&pair))
            .map_or(0.0, |o| o.fidelity)
    };
    let seeds = 64;
    let step = std::f64::consts::PI / seeds as f64;
    let (mut best_theta, mut best) = (0.0, f64::NEG_INFINITY);
    for k in 0..seeds {
        let theta = k as f64 * step;
        let f = fidelity_at(theta);
        if f > best {
            best = f;
            best_theta = theta;
        }
    }
    let (_, refined) = golden_max(fidelity_at, best_theta - step, best_theta + step, 1e-7);
    Ok(best.max(refined))
}

/// Network fidelity for a state family, as a report. Modes are zero-based.
pub fn network_report(spec: &StateSpec, sender: usize, receiver: usize) -> Result<FidelityReport> {
    if !spec.is_fully_symmetric() {
        return Err(Error::UnsupportedState(format!(
            "the {} family is not fully symmetric",
            spec.family()
        )));
    }
    let f = assisted_network_fidelity(&spec.build()?, sender, receiver)?;
    Ok(FidelityReport::new(f, sender + 1, vec![receiver + 1], spec.family()))
}
