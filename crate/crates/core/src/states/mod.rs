//! Optical recipes for the three-mode state families, the allotment inverse
//! problem, and random sampling of pure states.

mod allotment;
mod families;
mod sampler;

pub use allotment::{
    allotment, allotment_network, solve_allotment_params, squeezing_for_mixedness, AllotmentSolution,
};
pub use families::{
    basset_hound, ghzw, ghzw_from_mixedness, ghzw_mixedness, ghzw_squeezing_for_mixedness, noisy_ghzw,
    noisy_ghzw_mixedness, t_state, t_state_from_mixedness, t_state_mixedness, t_state_noise,
    t_state_squeezing_for_mixedness, tritter, two_mode_squeezed,
};
pub use sampler::{random_pure_sample, PureSample, SampleSet};

use serde::{Deserialize, Serialize};

use crate::entanglement::triangle_check;
use crate::error::{invalid_arg, Result};
use crate::phase_space::CovarianceMatrix;

/// Parametric description of a state family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum StateSpec {
    TwoModeSqueezed { r: f64 },
    Ghzw { r1: f64, r2: f64 },
    /// Thermal noise `n >= 1` on each input, squeezing `s = e^{2r}`.
    NoisyGhzw { n: f64, r: f64 },
    TState { r: f64 },
    BassetHound { a: f64 },
    ArbitraryPure { a1: f64, a2: f64, a3: f64 },
    AllotmentRaw { m: f64, s: f64, t: f64 },
}

impl StateSpec {
    /// GHZ/W with equal squeezings and local mixedness `a`.
    pub fn ghzw_with_mixedness(a: f64) -> Result<Self> {
        let r = ghzw_squeezing_for_mixedness(a)?;
        Ok(StateSpec::Ghzw { r1: r, r2: r })
    }

    pub fn t_state_with_mixedness(a: f64) -> Result<Self> {
        Ok(StateSpec::TState { r: t_state_squeezing_for_mixedness(a)? })
    }

    /// Noisy GHZ/W from the squeezing factor `s = e^{2r}` instead of `r`.
    pub fn noisy_ghzw_from_s(n: f64, s: f64) -> Result<Self> {
        if !(s > 0.0) {
            return invalid_arg(format!("squeezing factor s must be positive, got {s}"));
        }
        Ok(StateSpec::NoisyGhzw { n, r: s.ln() / 2.0 })
    }

    /// Kebab-case family tag, as used in JSON and on the command line.
    pub fn family(&self) -> &'static str {
        match self {
            StateSpec::TwoModeSqueezed { .. } => "two-mode-squeezed",
            StateSpec::Ghzw { .. } => "ghzw",
            StateSpec::NoisyGhzw { .. } => "noisy-ghzw",
            StateSpec::TState { .. } => "t-state",
            StateSpec::BassetHound { .. } => "basset-hound",
            StateSpec::ArbitraryPure { .. } => "arbitrary-pure",
            StateSpec::AllotmentRaw { .. } => "allotment-raw",
        }
    }

    pub fn n_modes(&self) -> usize {
        match self {
            StateSpec::TwoModeSqueezed { .. } => 2,
            _ => 3,
        }
    }

    /// Families whose states are invariant under every mode permutation.
    pub fn is_fully_symmetric(&self) -> bool {
        matches!(self, StateSpec::Ghzw { .. } | StateSpec::NoisyGhzw { .. } | StateSpec::TState { .. })
    }

    pub fn is_pure(&self) -> bool {
        match self {
            StateSpec::NoisyGhzw { n, .. } => *n == 1.0,
            StateSpec::TState { r } => *r == 0.0,
            _ => true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |vals: &[f64]| -> Result<()> {
            if vals.iter().any(|v| !v.is_finite()) {
                return invalid_arg("state parameters must be finite");
            }
            Ok(())
        };
        match *self {
            StateSpec::TwoModeSqueezed { r } | StateSpec::TState { r } => {
                finite(&[r])?;
                if r < 0.0 {
                    return invalid_arg(format!("squeezing r must be non-negative, got {r}"));
                }
            }
            StateSpec::Ghzw { r1, r2 } => finite(&[r1, r2])?,
            StateSpec::NoisyGhzw { n, r } => {
                finite(&[n, r])?;
                if n < 1.0 {
                    return invalid_arg(format!("thermal noise n must be at least 1, got {n}"));
                }
            }
            StateSpec::BassetHound { a } => {
                finite(&[a])?;
                if a < 1.0 {
                    return invalid_arg(format!("a must be at least 1, got {a}"));
                }
            }
            StateSpec::ArbitraryPure { a1, a2, a3 } => {
                finite(&[a1, a2, a3])?;
                if !triangle_check(a1, a2, a3) {
                    return invalid_arg(format!("({a1}, {a2}, {a3}) violates the triangle inequality"));
                }
            }
            StateSpec::AllotmentRaw { m, s, t } => {
                finite(&[m, s, t])?;
                if m < 1.0 || !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&t) {
                    return invalid_arg(format!(
                        "allotment parameters need m >= 1 and s, t in [0, 1], got ({m}, {s}, {t})"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Simulates the optical recipe and returns the output covariance matrix.
    pub fn build(&self) -> Result<CovarianceMatrix> {
        self.validate()?;
        match *self {
            StateSpec::TwoModeSqueezed { r } => two_mode_squeezed(r),
            StateSpec::Ghzw { r1, r2 } => ghzw(r1, r2),
            StateSpec::NoisyGhzw { n, r } => noisy_ghzw(n, r),
            StateSpec::TState { r } => t_state(r),
            StateSpec::BassetHound { a } => basset_hound(a),
            StateSpec::ArbitraryPure { a1, a2, a3 } => solve_allotment_params(a1, a2, a3)?.state(),
            StateSpec::AllotmentRaw { m, s, t } => allotment(m, s, t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_space::{check_physical, TOL_PHYS};

    #[test]
    fn json_tagging() {
        let spec = StateSpec::BassetHound { a: 3.0 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"family":"basset-hound","a":3.0}"#);
        assert_eq!(serde_json::from_str::<StateSpec>(&json).unwrap(), spec);
        let noisy: StateSpec = serde_json::from_str(r#"{"family":"noisy-ghzw","n":2,"r":0.5}"#).unwrap();
        assert_eq!(noisy.family(), "noisy-ghzw");
        assert!(serde_json::from_str::<StateSpec>(r#"{"family":"cat","a":1}"#).is_err());
    }

    #[test]
    fn every_family_is_physical() {
        let specs = [
            StateSpec::TwoModeSqueezed { r: 0.8 },
            StateSpec::Ghzw { r1: 0.2, r2: 0.9 },
            StateSpec::NoisyGhzw { n: 1.7, r: 0.6 },
            StateSpec::TState { r: 1.1 },
            StateSpec::BassetHound { a: 4.0 },
            StateSpec::ArbitraryPure { a1: 2.0, a2: 1.7, a3: 2.2 },
            StateSpec::AllotmentRaw { m: 2.0, s: 0.3, t: 0.6 },
        ];
        for spec in specs {
            let sigma = spec.build().unwrap();
            assert_eq!(sigma.n_modes(), spec.n_modes());
            assert!(check_physical(&sigma, TOL_PHYS), "{spec:?}");
            if spec.is_pure() {
                assert!((sigma.det() - 1.0).abs() < 1e-8, "{spec:?}");
            }
            if spec.is_fully_symmetric() {
                assert!(sigma.is_fully_symmetric(1e-10));
            }
        }
    }

    #[test]
    fn validation() {
        assert!(StateSpec::BassetHound { a: 0.5 }.build().is_err());
        assert!(StateSpec::ArbitraryPure { a1: 2.0, a2: 1.0, a3: 1.5 }.build().is_err());
        assert!(StateSpec::AllotmentRaw { m: 2.0, s: 1.5, t: 0.5 }.build().is_err());
        assert!(StateSpec::TState { r: f64::NAN }.build().is_err());
        let s = StateSpec::noisy_ghzw_from_s(1.0, 4.0).unwrap();
        assert!(matches!(s, StateSpec::NoisyGhzw { r, .. } if (r - 2f64.ln()).abs() < 1e-15));
    }
}
