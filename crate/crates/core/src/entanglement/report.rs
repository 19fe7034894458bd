use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    classify_noisy_ghzw, contangle_symmetric_two_mode, is_locally_symmetric, log_negativity,
    one_vs_two_contangle, reduced_log_negativity, residual_contangle_basset, residual_contangle_noisy_ghzw,
    residual_gaussian_contangle, SeparabilityClass,
};
use crate::error::Result;
use crate::phase_space::{CovarianceMatrix, ModePartition};
use crate::states::StateSpec;

/// Entanglement of a state across all of its bipartitions.
///
/// `logneg` has one entry per bipartition; two-mode cuts such as `"1|2"`
/// refer to the reduced state of those modes. `contangle` lists only the
/// cuts for which a Gaussian contangle can be evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub family: String,
    pub spec: StateSpec,
    pub local_mixedness: Vec<f64>,
    pub purity: f64,
    pub logneg: BTreeMap<ModePartition, f64>,
    pub contangle: BTreeMap<ModePartition, f64>,
    pub residual_gaussian_contangle: Option<f64>,
    pub separability_class: Option<SeparabilityClass>,
}

fn partitions(n_modes: usize) -> Vec<ModePartition> {
    let labels: &[&str] = if n_modes == 2 {
        &["1|2"]
    } else {
        &["1|23", "2|13", "3|12", "1|2", "1|3", "2|3"]
    };
    labels.iter().map(|s| s.parse().expect("static label")).collect()
}

/// Builds the state described by `spec` and measures its entanglement.
pub fn analyze(spec: &StateSpec) -> Result<EntanglementReport> {
    let sigma = spec.build()?;
    analyze_state(spec, &sigma)
}

pub(crate) fn analyze_state(spec: &StateSpec, sigma: &CovarianceMatrix) -> Result<EntanglementReport> {
    let n = sigma.n_modes();
    let mut logneg = BTreeMap::new();
    let mut contangle = BTreeMap::new();
    for part in partitions(n) {
        if part.covers(n) {
            let en = log_negativity(sigma, &part)?;
            logneg.insert(part.clone(), en);
            let g = if n == 2 {
                if spec.is_pure() || is_locally_symmetric(sigma) || en == 0.0 {
                    Some(en * en)
                } else {
                    None
                }
            } else {
                one_vs_two_contangle(sigma, part.left()[0]).ok()
            };
            if let Some(g) = g {
                contangle.insert(part, g);
            }
        } else {
            let en = reduced_log_negativity(sigma, &part)?;
            logneg.insert(part.clone(), en);
            let reduced = sigma.reduce(&part.modes())?;
            let g = if en == 0.0 {
                Some(0.0)
            } else if is_locally_symmetric(&reduced) {
                contangle_symmetric_two_mode(&reduced).ok()
            } else if let StateSpec::BassetHound { a } = spec {
                // the two nonsymmetric pairs of the basset hound share one closed form
                Some(((3.0 * a + 1.0) / (a + 3.0)).acosh().powi(2))
            } else {
                None
            };
            if let Some(g) = g {
                contangle.insert(part, g);
            }
        }
    }

    let (residual, class) = match *spec {
        StateSpec::TwoModeSqueezed { .. } => (None, None),
        StateSpec::NoisyGhzw { n, r } if r >= 0.0 => {
            let s = (2.0 * r).exp();
            (Some(residual_contangle_noisy_ghzw(n, s)?), Some(classify_noisy_ghzw(n, s)?))
        }
        StateSpec::BassetHound { a } => (Some(residual_contangle_basset(a)?), None),
        _ => (residual_gaussian_contangle(sigma).ok().map(|g| g.max(0.0)), None),
    };

    Ok(EntanglementReport {
        family: spec.family().to_string(),
        spec: *spec,
        local_mixedness: sigma.local_mixednesses(),
        purity: sigma.purity()?,
        logneg,
        contangle,
        residual_gaussian_contangle: residual,
        separability_class: class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn key(s: &str) -> ModePartition {
        s.parse().unwrap()
    }

    #[test]
    fn basset_report() {
        let rep = analyze(&StateSpec::BassetHound { a: 3.0 }).unwrap();
        assert_eq!(rep.logneg[&key("2|3")], 0.0);
        assert_eq!(rep.contangle[&key("2|3")], 0.0);
        assert!(rep.logneg[&key("1|2")] > 0.0);
        assert_abs_diff_eq!(rep.contangle[&key("1|2")], (10f64 / 6.0).acosh().powi(2), epsilon = 1e-12);
        assert!(rep.residual_gaussian_contangle.unwrap() > 0.0);
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"1|23\""));
        let back: EntanglementReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn noisy_report_has_class() {
        let rep = analyze(&StateSpec::NoisyGhzw { n: 2.0, r: 0.1 }).unwrap();
        assert_eq!(rep.separability_class, Some(SeparabilityClass::FullySeparable));
        assert_eq!(rep.residual_gaussian_contangle, Some(0.0));
        assert_abs_diff_eq!(rep.purity, 0.125, epsilon = 1e-12);
    }

    #[test]
    fn t_state_has_no_pair_entanglement() {
        for r in [0.3, 0.8, 1.5] {
            let rep = analyze(&StateSpec::TState { r }).unwrap();
            for p in ["1|2", "1|3", "2|3"] {
                assert_eq!(rep.logneg[&key(p)], 0.0, "r={r} {p}");
            }
            assert!(rep.logneg[&key("1|23")] > 0.0);
        }
    }

    #[test]
    fn all_values_non_negative() {
        let specs = [
            StateSpec::TwoModeSqueezed { r: 0.5 },
            StateSpec::Ghzw { r1: 0.2, r2: 0.6 },
            StateSpec::ArbitraryPure { a1: 2.0, a2: 1.5, a3: 2.1 },
        ];
        for spec in specs {
            let rep = analyze(&spec).unwrap();
            assert!(rep.logneg.values().chain(rep.contangle.values()).all(|v| *v >= 0.0));
        }
    }
}
