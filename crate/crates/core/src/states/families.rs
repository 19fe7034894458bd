use nalgebra::{DMatrix, DVector};

use crate::error::{invalid_arg, Result};
use crate::optimize::bisect;
use crate::phase_space::{apply_symplectic, beam_splitter, CovarianceMatrix, SymplecticMatrix};

fn diagonal(values: &[f64]) -> CovarianceMatrix {
    CovarianceMatrix::symmetrized(DMatrix::from_diagonal(&DVector::from_column_slice(values)))
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return invalid_arg(format!("{name} must be finite, got {v}"));
    }
    Ok(())
}

/// Two-mode squeezed vacuum, `sigma_1 = sigma_2 = m 1`,
/// `eps = diag(sqrt(m^2 - 1), -sqrt(m^2 - 1))` with `m = cosh 2r`.
pub fn two_mode_squeezed(r: f64) -> Result<CovarianceMatrix> {
    check_finite("r", r)?;
    if r < 0.0 {
        return invalid_arg(format!("two-mode squeezing must be non-negative, got {r}"));
    }
    let m = (2.0 * r).cosh();
    let c = (2.0 * r).sinh();
    #[rustfmt::skip]
    let e = DMatrix::from_row_slice(4, 4, &[
        m, 0.0, c, 0.0,
        0.0, m, 0.0, -c,
        c, 0.0, m, 0.0,
        0.0, -c, 0.0, m,
    ]);
    Ok(CovarianceMatrix::symmetrized(e))
}

/// The symmetrizing three-mode network `B_23(1/2) B_12(1/3)`.
pub fn tritter() -> SymplecticMatrix {
    let b12 = beam_splitter(0, 1, 1.0 / 3.0, 3).expect("valid beam splitter");
    let b23 = beam_splitter(1, 2, 0.5, 3).expect("valid beam splitter");
    b23.compose(&b12).expect("same size")
}

fn through_tritter(inputs: &CovarianceMatrix) -> CovarianceMatrix {
    apply_symplectic(inputs, &tritter()).expect("three-mode input")
}

/// Pure fully symmetric GHZ/W state: a p-squeezed mode (`r1`) and two
/// x-squeezed modes (`r2`) mixed on a tritter.
pub fn ghzw(r1: f64, r2: f64) -> Result<CovarianceMatrix> {
    check_finite("r1", r1)?;
    check_finite("r2", r2)?;
    let (a, b) = ((2.0 * r1).exp(), (2.0 * r2).exp());
    Ok(through_tritter(&diagonal(&[a, 1.0 / a, 1.0 / b, b, 1.0 / b, b])))
}

/// Local mixedness of a GHZ/W state, `sqrt(4 cosh(2(r1 + r2)) + 5) / 3`.
pub fn ghzw_mixedness(r1: f64, r2: f64) -> f64 {
    (4.0 * (2.0 * (r1 + r2)).cosh() + 5.0).sqrt() / 3.0
}

/// Average squeezing `r_bar` giving local mixedness `a`.
pub fn ghzw_squeezing_for_mixedness(a: f64) -> Result<f64> {
    check_finite("a", a)?;
    if a < 1.0 {
        return invalid_arg(format!("local mixedness must be at least 1, got {a}"));
    }
    Ok(((9.0 * a * a - 5.0) / 4.0).max(1.0).acosh() / 4.0)
}

/// GHZ/W state with equal squeezings and local mixedness `a`.
pub fn ghzw_from_mixedness(a: f64) -> Result<CovarianceMatrix> {
    let r = ghzw_squeezing_for_mixedness(a)?;
    ghzw(r, r)
}

/// Noisy GHZ/W state: thermal squeezed inputs `n diag(s, 1/s)`,
/// `n diag(1/s, s)` (twice) with `s = e^{2r}`, mixed on a tritter.
pub fn noisy_ghzw(n: f64, r: f64) -> Result<CovarianceMatrix> {
    check_finite("n", n)?;
    check_finite("r", r)?;
    if n < 1.0 {
        return invalid_arg(format!("thermal noise n must be at least 1, got {n}"));
    }
    let s = (2.0 * r).exp();
    Ok(through_tritter(&diagonal(&[n * s, n / s, n / s, n * s, n / s, n * s])))
}

/// Local mixedness of the noisy GHZ/W state, `n sqrt(2s^4 + 5s^2 + 2) / (3s)`.
pub fn noisy_ghzw_mixedness(n: f64, s: f64) -> f64 {
    n * (2.0 * s.powi(4) + 5.0 * s * s + 2.0).sqrt() / (3.0 * s)
}

/// Thermal noise `n(r) = sqrt(3 + e^{-4r}) - e^{-2r}` fed into the T-state recipe.
pub fn t_state_noise(r: f64) -> f64 {
    let e = (-2.0 * r).exp();
    (3.0 + e * e).sqrt() - e
}

/// Mixed fully symmetric T state: a p-squeezed mode and two thermal modes
/// with noise `n(r)` on a tritter. No two-mode reduction is entangled.
pub fn t_state(r: f64) -> Result<CovarianceMatrix> {
    check_finite("r", r)?;
    if r < 0.0 {
        return invalid_arg(format!("T-state squeezing must be non-negative, got {r}"));
    }
    let a = (2.0 * r).exp();
    let n = t_state_noise(r);
    Ok(through_tritter(&diagonal(&[a, 1.0 / a, n, n, n, n])))
}

/// Local mixedness of the T state.
pub fn t_state_mixedness(r: f64) -> f64 {
    let e2 = (-2.0 * r).exp();
    let inner = 2.0 * e2 * (3.0 + e2 * e2).sqrt() * (-3.0 + (4.0 * r).exp()) + 6.0 * e2 * e2 + 11.0;
    inner.sqrt() / 3.0
}

/// Squeezing of the T state with local mixedness `a`, found by bisection.
pub fn t_state_squeezing_for_mixedness(a: f64) -> Result<f64> {
    check_finite("a", a)?;
    if a < 1.0 {
        return invalid_arg(format!("local mixedness must be at least 1, got {a}"));
    }
    if a == 1.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while t_state_mixedness(hi) < a {
        hi *= 2.0;
        if hi > 40.0 {
            return invalid_arg(format!("local mixedness {a} too large for a T state"));
        }
    }
    Ok(bisect(|r| t_state_mixedness(r) - a, 0.0, hi, 1e-15).expect("bracketed"))
}

pub fn t_state_from_mixedness(a: f64) -> Result<CovarianceMatrix> {
    t_state(t_state_squeezing_for_mixedness(a)?)
}

/// Basset hound state: one arm of a two-mode squeezed state (`a = cosh 2r`)
/// split with the vacuum on a balanced beam splitter.
pub fn basset_hound(a: f64) -> Result<CovarianceMatrix> {
    check_finite("a", a)?;
    if a < 1.0 {
        return invalid_arg(format!("basset hound parameter a must be at least 1, got {a}"));
    }
    let r = a.acosh() / 2.0;
    let input = two_mode_squeezed(r)?.tensor(&CovarianceMatrix::vacuum(1));
    apply_symplectic(&input, &beam_splitter(1, 2, 0.5, 3)?)
}
