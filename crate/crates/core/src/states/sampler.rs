use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::allotment::{allotment, squeezing_for_mixedness};
use crate::error::{invalid_arg, Result};

/// One random pure state drawn through the allotment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PureSample {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub s: f64,
    pub t: f64,
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSet {
    pub samples: Vec<PureSample>,
    /// Draws discarded because no admissible squeezing exists at `(s, t)`.
    pub rejected: usize,
}

impl SampleSet {
    /// CSV with header `a1,a2,a3,s,t,m`, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a1,a2,a3,s,t,m\n");
        for p in &self.samples {
            let row = [p.a1, p.a2, p.a3, p.s, p.t, p.m].map(crate::output::fmt_sig);
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

/// Draws `count` pure three-mode states with mode-1 mixedness `a1`: `s, t`
/// uniform on `[0, 1]`, `m` fixed by `a1`. Deterministic for a given seed
/// (ChaCha8 stream seeded with `seed_from_u64`).
pub fn random_pure_sample(a1: f64, count: usize, seed: u64) -> Result<SampleSet> {
    if !(a1 >= 1.0) || !a1.is_finite() {
        return invalid_arg(format!("a1 must be finite and >= 1, got {a1}"));
    }
    if count == 0 {
        return invalid_arg("sample count must be positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(count);
    let mut rejected = 0;
    while samples.len() < count {
        let s: f64 = rng.random();
        let t: f64 = rng.random();
        let Some(m) = squeezing_for_mixedness(a1, s, t).filter(|m| *m >= 1.0) else {
            rejected += 1;
            continue;
        };
        let a = allotment(m, s, t)?.local_mixednesses();
        samples.push(PureSample { a1: a[0], a2: a[1], a3: a[2], s, t, m });
    }
    Ok(SampleSet { samples, rejected })
}
