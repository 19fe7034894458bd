use std::fmt;

use serde::{Deserialize, Serialize};

use super::arcsinh_sq;
use crate::error::{invalid_arg, Result};

fn check_mixedness(a: f64) -> Result<()> {
    if !(a >= 1.0) || !a.is_finite() {
        return invalid_arg(format!("local mixedness must be finite and >= 1, got {a}"));
    }
    Ok(())
}

fn check_noise_pair(n: f64, s: f64) -> Result<()> {
    if !(n >= 1.0) || !n.is_finite() {
        return invalid_arg(format!("thermal noise n must be finite and >= 1, got {n}"));
    }
    if !(s >= 1.0) || !s.is_finite() {
        return invalid_arg(format!("squeezing factor s = e^(2r) must be finite and >= 1, got {s}"));
    }
    Ok(())
}

/// Two-mode contangle `G(i|j)` of a GHZ/W state with local mixedness `a`,
/// `ln^2[(3a^2 - 1 - sqrt(9a^4 - 10a^2 + 1)) / 2] / 4`, written without the
/// cancellation that spoils it for large `a`.
pub fn ghzw_two_mode_contangle(a: f64) -> Result<f64> {
    check_mixedness(a)?;
    let a2 = a * a;
    let root = ((9.0 * a2 - 10.0) * a2 + 1.0).max(0.0).sqrt();
    let x = 2.0 * a2 / (3.0 * a2 - 1.0 + root);
    Ok(0.25 * x.ln().powi(2))
}

/// Residual contangle of the GHZ/W state with local mixedness `a`.
pub fn residual_contangle_ghzw(a: f64) -> Result<f64> {
    check_mixedness(a)?;
    let total = arcsinh_sq((a * a - 1.0).sqrt());
    Ok((total - 2.0 * ghzw_two_mode_contangle(a)?).max(0.0))
}

/// Smallest `s` (exclusive) for which the noisy GHZ/W state with noise `n`
/// is fully inseparable.
pub fn class1_threshold(n: f64) -> f64 {
    let n2 = n * n;
    let inner = 9.0 * n2 * n2 - 2.0 * n2 + 9.0 + 3.0 * (n2 - 1.0) * (9.0 * n2 * n2 + 14.0 * n2 + 9.0).sqrt();
    inner.sqrt() / (4.0 * n)
}

/// Separability class of the noisy GHZ/W state in the `(n, s)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparabilityClass {
    /// Entangled across every bipartition.
    FullyInseparable,
    /// Separable across every 1-vs-2 cut but not fully separable (bound entangled).
    BoundBiseparable,
    FullySeparable,
}

impl SeparabilityClass {
    pub fn number(&self) -> u8 {
        match self {
            SeparabilityClass::FullyInseparable => 1,
            SeparabilityClass::BoundBiseparable => 4,
            SeparabilityClass::FullySeparable => 5,
        }
    }
}

impl fmt::Display for SeparabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SeparabilityClass::FullyInseparable => "fully inseparable",
            SeparabilityClass::BoundBiseparable => "bound biseparable",
            SeparabilityClass::FullySeparable => "fully separable",
        };
        write!(f, "class {} ({name})", self.number())
    }
}

pub fn classify_noisy_ghzw(n: f64, s: f64) -> Result<SeparabilityClass> {
    check_noise_pair(n, s)?;
    Ok(if s > class1_threshold(n) {
        SeparabilityClass::FullyInseparable
    } else if s > n {
        SeparabilityClass::BoundBiseparable
    } else {
        SeparabilityClass::FullySeparable
    })
}

/// Residual contangle of the noisy GHZ/W state; zero outside class 1.
pub fn residual_contangle_noisy_ghzw(n: f64, s: f64) -> Result<f64> {
    if classify_noisy_ghzw(n, s)? != SeparabilityClass::FullyInseparable {
        return Ok(0.0);
    }
    let (n2, s2) = (n * n, s * s);
    let root = (4.0 * s2 * s2 + 10.0 * s2 + 4.0).sqrt();
    let arg = n2 * (4.0 * s2 * s2 + s2 + 4.0 - 2.0 * (s2 - 1.0) * root) / (9.0 * s2);
    let bipartite = 0.25 * arg.ln().powi(2);
    let pair = (-(n * (s2 + 2.0).sqrt() / (3f64.sqrt() * s)).ln()).max(0.0);
    Ok((bipartite - 2.0 * pair * pair).max(0.0))
}

/// Whether bipartite and tripartite entanglement grow together: `n < sqrt 3`
/// and `s > sqrt(2) n / sqrt(3 - n^2)`.
pub fn promiscuity_predicate(n: f64, s: f64) -> bool {
    n < 3f64.sqrt() && s > 2f64.sqrt() * n / (3.0 - n * n).sqrt()
}

/// Residuals of the basset hound state for probe mode 1 and probe mode 3
/// (mode 2 is equivalent to 3).
pub fn basset_probe_residuals(a: f64) -> Result<(f64, f64)> {
    check_mixedness(a)?;
    let pair = ((3.0 * a + 1.0) / (a + 3.0)).acosh().powi(2);
    let probe1 = arcsinh_sq((a * a - 1.0).sqrt()) - 2.0 * pair;
    let probe3 = arcsinh_sq(0.5 * ((a - 1.0) * (a + 3.0)).sqrt()) - pair;
    Ok((probe1, probe3))
}

/// Residual contangle of the basset hound state, minimized over probes.
pub fn residual_contangle_basset(a: f64) -> Result<f64> {
    let (p1, p3) = basset_probe_residuals(a)?;
    Ok(p1.min(p3).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::{contangle_pure_bipartition, contangle_symmetric_two_mode, reduced_log_negativity};
    use crate::phase_space::ModePartition;
    use crate::states::{basset_hound, ghzw_from_mixedness, noisy_ghzw, noisy_ghzw_mixedness};
    use approx::assert_abs_diff_eq;

    #[test]
    fn ghzw_limits() {
        assert_abs_diff_eq!(residual_contangle_ghzw(1.0).unwrap(), 0.0);
        let lim = 3f64.ln().powi(2) / 4.0;
        assert_abs_diff_eq!(ghzw_two_mode_contangle(1e6).unwrap(), lim, epsilon = 1e-6);
        assert!(residual_contangle_ghzw(0.9).is_err());
    }

    #[test]
    fn ghzw_cross_module() {
        let p: ModePartition = "1|23".parse().unwrap();
        for a in [1.2, 2.0, 5.0] {
            let g = ghzw_from_mixedness(a).unwrap();
            let pair = contangle_symmetric_two_mode(&g.reduce(&[0, 1]).unwrap()).unwrap();
            let numeric = contangle_pure_bipartition(&g, &p).unwrap() - 2.0 * pair;
            assert_abs_diff_eq!(residual_contangle_ghzw(a).unwrap(), numeric, epsilon = 1e-8);
            assert_abs_diff_eq!(ghzw_two_mode_contangle(a).unwrap(), pair, epsilon = 1e-9);
        }
    }

    #[test]
    fn noisy_residual_values() {
        assert_eq!(residual_contangle_noisy_ghzw(1.0, 1.0).unwrap(), 0.0);
        let s = 10f64.powf(0.7);
        let g = residual_contangle_noisy_ghzw(1.0, s).unwrap();
        assert!((g - 1.9).abs() < 0.05, "{g}");
        // pure limit agrees with the GHZ/W formula
        for s in [1.5, 3.0, 7.0] {
            let a = noisy_ghzw_mixedness(1.0, s);
            assert_abs_diff_eq!(
                residual_contangle_noisy_ghzw(1.0, s).unwrap(),
                residual_contangle_ghzw(a).unwrap(),
                epsilon = 1e-9
            );
        }
        // continuity at the class-1 boundary
        let n = 1.5;
        let edge = class1_threshold(n);
        assert!(residual_contangle_noisy_ghzw(n, edge * (1.0 + 1e-9)).unwrap() < 1e-6);
        assert!(residual_contangle_noisy_ghzw(0.5, 2.0).is_err());
    }

    #[test]
    fn noisy_residual_monotone_in_s() {
        for n in [1.0, 1.3, 2.0] {
            let mut prev = 0.0;
            for k in 0..200 {
                let s = 1.0 + 0.05 * k as f64;
                let g = residual_contangle_noisy_ghzw(n, s).unwrap();
                assert!(g >= prev - 1e-12, "n={n} s={s}");
                prev = g;
            }
        }
    }

    #[test]
    fn classification() {
        assert_abs_diff_eq!(class1_threshold(1.0), 1.0, epsilon = 1e-15);
        for s in [1.0001, 2.0, 10.0] {
            assert_eq!(classify_noisy_ghzw(1.0, s).unwrap(), SeparabilityClass::FullyInseparable);
        }
        assert_eq!(classify_noisy_ghzw(2.0, 2.0).unwrap(), SeparabilityClass::FullySeparable);
        assert_eq!(classify_noisy_ghzw(2.0, 1.5).unwrap(), SeparabilityClass::FullySeparable);
        let mid = 0.5 * (2.0 + class1_threshold(2.0));
        assert_eq!(classify_noisy_ghzw(2.0, mid).unwrap(), SeparabilityClass::BoundBiseparable);
        assert_eq!(SeparabilityClass::BoundBiseparable.to_string(), "class 4 (bound biseparable)");
    }

    #[test]
    fn promiscuity() {
        assert!(promiscuity_predicate(1.0, 2.0));
        assert!(!promiscuity_predicate(3f64.sqrt(), 1e9));
        assert!(!promiscuity_predicate(2.0, 100.0));
        let pair: ModePartition = "1|2".parse().unwrap();
        for i in 0..20 {
            for j in 0..20 {
                let n = 1.0 + 0.05 * i as f64;
                let s = 1.0 + 0.3 * j as f64 + 0.01;
                let sigma = noisy_ghzw(n, s.ln() / 2.0).unwrap();
                let entangled = reduced_log_negativity(&sigma, &pair).unwrap() > 0.0;
                assert_eq!(promiscuity_predicate(n, s), entangled, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn basset_values() {
        assert_abs_diff_eq!(residual_contangle_basset(1.0).unwrap(), 0.0);
        let lim = (3.0 + 2.0 * 2f64.sqrt()).ln().powi(2);
        let pair = ((3.0f64 * 1e6 + 1.0) / (1e6 + 3.0)).acosh().powi(2);
        assert_abs_diff_eq!(pair, lim, epsilon = 1e-4);
        for a in [1.5, 2.0, 3.0, 5.0, 10.0] {
            let (p1, p3) = basset_probe_residuals(a).unwrap();
            assert!(p1 > p3, "a={a}");
        }
        for a in [2.0, 3.0, 5.0] {
            assert!(residual_contangle_basset(a).unwrap() < residual_contangle_ghzw(a).unwrap());
        }
        // probe-3 total contangle from the constructed state
        let bh = basset_hound(3.0).unwrap();
        let p: ModePartition = "3|12".parse().unwrap();
        assert_abs_diff_eq!(
            contangle_pure_bipartition(&bh, &p).unwrap(),
            arcsinh_sq(0.5 * (2.0f64 * 6.0).sqrt()),
            epsilon = 1e-9
        );
    }
}
