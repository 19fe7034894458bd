use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use super::families::two_mode_squeezed;
use crate::entanglement::triangle_check;
use crate::error::{invalid_arg, Error, Result};
use crate::phase_space::{apply_symplectic, beam_splitter, CovarianceMatrix, SymplecticMatrix};

/// The allotment network `B_23(2/3) B_12(t) B_13(s)`.
pub fn allotment_network(s: f64, t: f64) -> Result<SymplecticMatrix> {
    let b13 = beam_splitter(0, 2, s, 3)?;
    let b12 = beam_splitter(0, 1, t, 3)?;
    let b23 = beam_splitter(1, 2, 2.0 / 3.0, 3)?;
    b23.compose(&b12)?.compose(&b13)
}

/// Pure three-mode state obtained by sending a two-mode squeezed state
/// (`cosh 2r = m`, modes 1 and 2) and a vacuum (mode 3) through the allotment.
pub fn allotment(m: f64, s: f64, t: f64) -> Result<CovarianceMatrix> {
    if !(m >= 1.0) || !m.is_finite() {
        return invalid_arg(format!("allotment squeezing m must be in [1, inf), got {m}"));
    }
    for (name, v) in [("s", s), ("t", t)] {
        if !(0.0..=1.0).contains(&v) {
            return invalid_arg(format!("allotment transmissivity {name} = {v} outside [0, 1]"));
        }
    }
    let input = two_mode_squeezed(m.acosh() / 2.0)?.tensor(&CovarianceMatrix::vacuum(1));
    apply_symplectic(&input, &allotment_network(s, t)?)
}

/// Two-mode squeezing `m` that gives mode 1 the local mixedness `a1` for
/// transmissivities `(s, t)`. `None` where the point is infeasible.
pub fn squeezing_for_mixedness(a1: f64, s: f64, t: f64) -> Option<f64> {
    let k = s * t + t - 1.0;
    if k.abs() < 1e-6 {
        return None;
    }
    let d = k * k;
    let disc = a1 * a1 * d + 4.0 * s * (t - 1.0) * t * (2.0 * t - 1.0) * (2.0 * s * t - 1.0);
    if disc < 0.0 {
        return None;
    }
    let m = (t * (t * (s - 1.0).powi(2) + s - 1.0) + disc.sqrt()) / d;
    m.is_finite().then_some(m)
}

/// Allotment parameters reproducing a target triplet of local mixednesses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AllotmentSolution {
    pub m: f64,
    pub s: f64,
    pub t: f64,
    /// `max(|a2 - a2*|, |a3 - a3*|)` at the returned point.
    pub residual_error: f64,
}

impl AllotmentSolution {
    pub fn state(&self) -> Result<CovarianceMatrix> {
        allotment(self.m, self.s, self.t)
    }
}

const GRID: usize = 64;
const SEEDS: usize = 8;
const ACCEPT: f64 = 1e-8;

/// Residual of modes 2 and 3 at angles `(u, v)`, with `s = sin^2 u`, `t = sin^2 v`.
fn residual(target: [f64; 3], u: f64, v: f64) -> Option<(Vector2<f64>, f64)> {
    let (s, t) = (u.sin().powi(2), v.sin().powi(2));
    let m = squeezing_for_mixedness(target[0], s, t)?;
    if m < 1.0 {
        return None;
    }
    let sigma = allotment(m, s, t).ok()?;
    let a = sigma.local_mixednesses();
    Some((Vector2::new(a[1] - target[1], a[2] - target[2]), m))
}

fn refine(target: [f64; 3], mut x: Vector2<f64>) -> (Vector2<f64>, f64) {
    let Some((mut r, _)) = residual(target, x[0], x[1]) else {
        return (x, f64::INFINITY);
    };
    let h = 1e-7;
    for _ in 0..100 {
        if r.amax() < 1e-11 {
            break;
        }
        let mut jac = Matrix2::zeros();
        for k in 0..2 {
            let mut xp = x;
            xp[k] += h;
            let rp = match residual(target, xp[0], xp[1]) {
                Some((rp, _)) => rp,
                None => {
                    xp[k] -= 2.0 * h;
                    match residual(target, xp[0], xp[1]) {
                        Some((rp, _)) => rp,
                        None => return (x, r.amax()),
                    }
                }
            };
            jac.set_column(k, &((rp - r) / (xp[k] - x[k])));
        }
        // Levenberg-Marquardt step with a tiny damping, then backtracking
        let jtj = jac.transpose() * jac;
        let damped = jtj + Matrix2::identity() * (1e-12 * jtj.trace());
        let Some(step) = damped.try_inverse().map(|inv| -(inv * jac.transpose() * r)) else {
            break;
        };
        let mut lambda = 1.0;
        let mut improved = false;
        while lambda > 1e-8 {
            let xn = x + step * lambda;
            if let Some((rn, _)) = residual(target, xn[0], xn[1]) {
                if rn.amax() < r.amax() {
                    x = xn;
                    r = rn;
                    improved = true;
                    break;
                }
            }
            lambda /= 2.0;
        }
        if !improved {
            break;
        }
    }
    (x, r.amax())
}

/// Finds `(m, s, t)` whose allotment output has local mixednesses `(a1, a2, a3)`.
///
/// `m` follows in closed form from `a1` at each `(s, t)`; the remaining 2x2
/// system is seeded from a 64 x 64 grid and polished by damped Gauss-Newton.
pub fn solve_allotment_params(a1: f64, a2: f64, a3: f64) -> Result<AllotmentSolution> {
    if [a1, a2, a3].iter().any(|a| !a.is_finite() || *a < 1.0) {
        return invalid_arg(format!("local mixednesses must be finite and >= 1, got ({a1}, {a2}, {a3})"));
    }
    if !triangle_check(a1, a2, a3) {
        return invalid_arg(format!("({a1}, {a2}, {a3}) violates the triangle inequality"));
    }
    if [a1, a2, a3].iter().all(|a| (a - 1.0).abs() < 1e-12) {
        return Ok(AllotmentSolution { m: 1.0, s: 0.5, t: 0.5, residual_error: 0.0 });
    }
    let target = [a1, a2, a3];
    let mut seeds = Vec::with_capacity(GRID * GRID);
    for i in 0..GRID {
        for j in 0..GRID {
            let s = i as f64 / (GRID - 1) as f64;
            let t = j as f64 / (GRID - 1) as f64;
            let (u, v) = (s.sqrt().asin(), t.sqrt().asin());
            if let Some((r, _)) = residual(target, u, v) {
                seeds.push((r.amax(), Vector2::new(u, v)));
            }
        }
    }
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut best = (f64::INFINITY, Vector2::zeros());
    for &(_, x0) in seeds.iter().take(SEEDS) {
        let (x, res) = refine(target, x0);
        if res < best.0 {
            best = (res, x);
        }
        if res < 1e-10 {
            break;
        }
    }
    let (res, x) = best;
    if !(res < ACCEPT) {
        return Err(Error::NoSolution {
            message: format!("allotment parameters for ({a1}, {a2}, {a3}) not found"),
            residual: res,
        });
    }
    let (s, t) = (x[0].sin().powi(2), x[1].sin().powi(2));
    let m = squeezing_for_mixedness(a1, s, t).expect("feasible at converged point");
    Ok(AllotmentSolution { m, s, t, residual_error: res })
}
