//! Acceptance criteria, one test each. Every test prints a PASS or FAIL line
//! with the measured values before asserting.

use std::f64::consts::SQRT_2;
use std::io::Write;
use std::time::Instant;

use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trimode::decoherence::{classical_crossing_time, entanglement_vanishing_time, fidelity_decay_curve, BathParams};
use trimode::entanglement::{
    class1_threshold, classify_noisy_ghzw, contangle_pure_bipartition, contangle_symmetric_two_mode, ghzw_two_mode_contangle, log_negativity,
    promiscuity_predicate, reduced_log_negativity, residual_contangle_basset, residual_contangle_ghzw,
    residual_contangle_noisy_ghzw, residual_gaussian_contangle, triangle_check, SeparabilityClass,
};
use trimode::phase_space::{
    apply_symplectic, beam_splitter, check_physical, from_decibels, partial_transpose, phase_rotation, squeezer,
    symplectic_eigenvalues, to_decibels, TOL_PHYS,
};
use trimode::protocols::{
    assisted_network_fidelity, asymmetric_feasibility, coherent_fidelity, et_from_gres, f2_reduced_optimal,
    f2_unitary_localized_optimal, optimal_asymmetric_family, optimal_network_fidelity_ghzw,
    telecloning_symmetric_fidelity, TelecloningWindow,
};
use trimode::states::{
    basset_hound, ghzw_from_mixedness, ghzw_squeezing_for_mixedness, noisy_ghzw, random_pure_sample,
    solve_allotment_params, t_state,
};
use trimode::{CovarianceMatrix, ModePartition, StateSpec, SymplecticMatrix};

/// Collects named checks and prints one verdict line for a criterion.
struct Verdict {
    id: u32,
    title: &'static str,
    start: Instant,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn new(id: u32, title: &'static str) -> Self {
        Self { id, title, start: Instant::now(), failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.failures.push(what);
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self, budget_s: f64) {
        let mut v = self;
        let elapsed = v.start.elapsed().as_secs_f64();
        v.check(elapsed < budget_s, format!("runtime {elapsed:.2}s exceeds {budget_s}s"));
        let status = if v.failures.is_empty() { "PASS" } else { "FAIL" };
        // Written to the raw handle so the verdict shows even when output is captured.
        let mut text = format!("{status} criterion {}: {} [{elapsed:.2}s]\n", v.id, v.title);
        for n in &v.notes {
            text += &format!("    {n}\n");
        }
        for f in &v.failures {
            text += &format!("    failed: {f}\n");
        }
        let _ = std::io::stderr().lock().write_all(text.as_bytes());
        assert!(v.failures.is_empty(), "criterion {} failed: {:?}", v.id, v.failures);
    }
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

fn part(s: &str) -> ModePartition {
    s.parse().unwrap()
}

#[test]
fn criterion_01_symmetric_telecloning_optimum() {
    let mut v = Verdict::new(1, "symmetric telecloning optimum");
    let f3 = telecloning_symmetric_fidelity(3.0).unwrap();
    v.note(format!("F(a=3) = {f3:.15}"));
    v.check(close(f3, 2.0 / 3.0, 1e-12), format!("F(3) = {f3} is not 2/3"));
    for a in [1.2, 2.0, 3.0, 5.0, 9.0] {
        let reduction = basset_hound(a).unwrap().reduce(&[0, 1]).unwrap();
        let numeric = coherent_fidelity(&reduction).unwrap();
        let closed = telecloning_symmetric_fidelity(a).unwrap();
        v.check(close(numeric, closed, 1e-9), format!("a={a}: constructed {numeric} vs closed {closed}"));
    }
    v.finish(1.0);
}

#[test]
fn criterion_02_asymmetric_extremal_point() {
    let mut v = Verdict::new(2, "asymmetric extremal point");
    let (bob, claire) = optimal_asymmetric_family(3.5, 0.8).unwrap();
    v.note(format!("(F_bob, F_claire) = ({bob:.12}, {claire:.12})"));
    v.check(close(bob, 0.8, 1e-9), format!("F_bob = {bob}"));
    v.check(close(claire, 0.5, 1e-9), format!("F_claire = {claire}"));
    v.finish(1.0);
}

#[test]
fn criterion_03_feasibility_window() {
    let mut v = Verdict::new(3, "feasibility window");
    let w = TelecloningWindow::new();
    let root = (1.0 + SQRT_2).sqrt();
    let (lo, hi) = (2.0 * SQRT_2 * (2.0 - root), 2.0 * SQRT_2 * (2.0 + root));
    v.note(format!("window = [{:.2}, {:.2}]", w.a_min, w.a_max));
    v.check(close(w.a_min, lo, 1e-6), format!("a_min = {}", w.a_min));
    v.check(close(w.a_max, hi, 1e-6), format!("a_max = {}", w.a_max));
    v.check(format!("{:.2}", w.a_min) == "1.26", "a_min does not print as 1.26");
    v.check(format!("{:.2}", w.a_max) == "10.05", "a_max does not print as 10.05");
    match asymmetric_feasibility(3.0) {
        Some((t_lo, t_hi)) => {
            v.note(format!("t-range at a=3 = [{t_lo:.12}, {t_hi:.12}]"));
            v.check(close(t_lo, 0.5, 1e-9), format!("t_min(3) = {t_lo}"));
            let expected = 2.0 * SQRT_2 - 1.0;
            v.check(
                close(t_hi, expected, 1e-9),
                format!("t_max(3) = {t_hi}, expected 2*sqrt(2) - 1 = {expected}"),
            );
        }
        None => v.check(false, "a=3 reported outside the window"),
    }
    v.finish(1.0);
}

#[test]
fn criterion_04_saturation_constants() {
    let mut v = Verdict::new(4, "saturation constants");
    let big = 1e6;
    let ghzw_lim = 3f64.ln().powi(2) / 4.0;
    let closed = ghzw_two_mode_contangle(big).unwrap();
    v.note(format!("GHZ/W pair contangle at a=1e6: {closed:.8}, limit {ghzw_lim:.8}"));
    v.check(((closed - ghzw_lim) / ghzw_lim).abs() < 1e-4, format!("GHZ/W closed form {closed}"));
    // the constructed state carries e^{-2r} ~ 1/a next to entries ~ a, so it
    // only resolves the pair at moderate a; there it must match the closed form
    let mid = 1e3;
    let pair = ghzw_from_mixedness(mid).unwrap().reduce(&[0, 1]).unwrap();
    let numeric = contangle_symmetric_two_mode(&pair).unwrap();
    let closed_mid = ghzw_two_mode_contangle(mid).unwrap();
    v.note(format!("GHZ/W pair contangle at a=1e3: constructed {numeric:.10}, closed {closed_mid:.10}"));
    v.check(close(numeric, closed_mid, 1e-7), format!("GHZ/W constructed {numeric} vs {closed_mid}"));

    let bass_lim = (3.0 + 2.0 * SQRT_2).ln().powi(2);
    let report = trimode::entanglement::analyze(&StateSpec::BassetHound { a: big }).unwrap();
    let bass = report.contangle[&part("1|2")];
    v.note(format!("basset pair contangle at a=1e6: {bass:.8}, limit {bass_lim:.8}"));
    v.check(((bass - bass_lim) / bass_lim).abs() < 1e-4, format!("basset {bass}"));

    let f2 = f2_reduced_optimal(10.0).unwrap();
    let f2_lim = 3.0 / (3.0 + 3f64.sqrt());
    v.note(format!("F2red(r=10) = {f2:.10}, limit {f2_lim:.10}"));
    v.check(close(f2, f2_lim, 1e-6), format!("F2red = {f2}"));
    v.finish(5.0);
}

#[test]
fn criterion_05_noisy_phase_diagram() {
    let mut v = Verdict::new(5, "noisy GHZ/W phase diagram");
    let (cut, pair) = (part("1|23"), part("1|2"));
    let mut counts = [0usize; 3];
    for i in 0..50 {
        for j in 0..50 {
            let n_db = 4.0 * i as f64 / 49.0;
            let s_db = 7.0 * j as f64 / 49.0;
            let (n, s) = (from_decibels(n_db), from_decibels(s_db));
            let class = classify_noisy_ghzw(n, s).unwrap();
            let sigma = noisy_ghzw(n, s.ln() / 2.0).unwrap();
            let at = format!("(n_dB, s_dB) = ({n_db:.3}, {s_db:.3})");

            // class 1 iff the 1|23 cut is NPT (all 1|2 cuts are equivalent by symmetry)
            let npt = log_negativity(&sigma, &cut).unwrap() > 0.0;
            v.check((class == SeparabilityClass::FullyInseparable) == npt, format!("class 1 vs PPT at {at}"));
            // class 5 iff sigma >= 1, i.e. a mixture of coherent states
            let shifted = sigma.matrix() - DMatrix::<f64>::identity(6, 6);
            let classical = shifted.symmetric_eigenvalues().min() >= -1e-12;
            v.check((class == SeparabilityClass::FullySeparable) == classical, format!("class 5 vs sigma >= 1 at {at}"));
            // termic inequalities
            let by_formula = if s > class1_threshold(n) {
                SeparabilityClass::FullyInseparable
            } else if s > n {
                SeparabilityClass::BoundBiseparable
            } else {
                SeparabilityClass::FullySeparable
            };
            v.check(class == by_formula, format!("classifier vs inequalities at {at}"));
            counts[match class {
                SeparabilityClass::FullyInseparable => 0,
                SeparabilityClass::BoundBiseparable => 1,
                SeparabilityClass::FullySeparable => 2,
            }] += 1;

            let reduced_npt = reduced_log_negativity(&sigma, &pair).unwrap() > 0.0;
            v.check(promiscuity_predicate(n, s) == reduced_npt, format!("promiscuity vs 1|2 PPT at {at}"));
        }
    }
    v.note(format!("grid classes: {} class 1, {} class 4, {} class 5", counts[0], counts[1], counts[2]));
    let g = residual_contangle_noisy_ghzw(1.0, from_decibels(7.0)).unwrap();
    v.note(format!("residual contangle at (0 dB, 7 dB) = {g:.4}"));
    v.check((g - 1.9).abs() <= 0.05, format!("residual contangle {g}"));
    v.finish(30.0);
}

#[test]
fn criterion_06_promiscuity_thresholds() {
    let mut v = Verdict::new(6, "promiscuity thresholds");
    let root3 = 3f64.sqrt();
    let db = to_decibels(root3).unwrap();
    v.note(format!("n = sqrt(3) is {db:.3} dB"));
    v.check(format!("{db:.3}") == "2.386", format!("sqrt(3) in dB = {db}"));
    for k in 0..200 {
        let n = root3 * (1.0 + 0.01 * k as f64);
        for s in [1.0, 10.0, 1e3, 1e6] {
            v.check(!promiscuity_predicate(n, s), format!("promiscuous at n={n}, s={s}"));
        }
    }
    v.check(promiscuity_predicate(root3 * (1.0 - 1e-3), 1e3), "no promiscuity just below sqrt(3)");
    let purity = noisy_ghzw(root3, 0.8).unwrap().purity().unwrap();
    let expected = 1.0 / (3.0 * root3);
    v.note(format!("purity at n = sqrt(3): {purity:.12} (n^-3 = {expected:.12})"));
    v.check(close(purity, expected, 1e-9), format!("purity {purity}"));
    v.check(close(expected, 0.19245, 1e-5), "1/(3 sqrt 3) differs from 0.19245");
    v.finish(1.0);
}

#[test]
fn criterion_07_allotment_completeness() {
    let mut v = Verdict::new(7, "allotment completeness");
    let set = random_pure_sample(2.0, 10_000, 2024).unwrap();
    v.check(set.samples.len() == 10_000, format!("{} samples", set.samples.len()));
    let bad = set.samples.iter().filter(|s| !triangle_check(s.a1, s.a2, s.a3)).count();
    v.note(format!("{} samples, {} rejected draws, {bad} triangle violations", set.samples.len(), set.rejected));
    v.check(bad == 0, format!("{bad} samples violate the triangle inequality"));

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst: f64 = 0.0;
    let mut tried = 0;
    while tried < 200 {
        let a1: f64 = rng.random_range(1.0..6.0);
        let a2: f64 = rng.random_range(1.0..6.0);
        let a3 = rng.random_range((a1 - a2).abs() + 1.0..=a1 + a2 - 1.0);
        if !triangle_check(a1, a2, a3) {
            continue;
        }
        tried += 1;
        let residual = solve_allotment_params(a1, a2, a3)
            .and_then(|sol| sol.state())
            .map(|sigma| {
                let got = sigma.local_mixednesses();
                (got[0] - a1).abs().max((got[1] - a2).abs()).max((got[2] - a3).abs())
            })
            .unwrap_or(f64::INFINITY);
        worst = worst.max(residual);
        v.check(residual < 1e-6, format!("({a1}, {a2}, {a3}) round trip residual {residual}"));
    }
    v.note(format!("200 round trips, worst residual {worst:.2e}"));
    v.finish(60.0);
}

#[test]
fn criterion_08_bridge_consistency() {
    let mut v = Verdict::new(8, "bridge consistency");
    for a in [1.5, 2.0, 4.0] {
        let sigma = ghzw_from_mixedness(a).unwrap();
        let numeric = assisted_network_fidelity(&sigma, 0, 1).unwrap();
        let closed = (1.0 + et_from_gres(residual_contangle_ghzw(a).unwrap()).unwrap()) / 2.0;
        let r_bar = ghzw_squeezing_for_mixedness(a).unwrap();
        let uni = f2_unitary_localized_optimal(r_bar).unwrap();
        v.note(format!("a={a}: numeric {numeric:.6}, closed {closed:.6}, localized {uni:.6}"));
        v.check(close(numeric, closed, 1e-3), format!("a={a}: numeric {numeric} vs closed {closed}"));
        v.check(numeric > 0.5 && closed > 0.5, format!("a={a}: not above 1/2"));
        v.check(uni > numeric && uni > closed, format!("a={a}: localized {uni} does not dominate"));
    }
    for k in 1..=60 {
        let a = 1.0 + 0.05 * k as f64 * k as f64;
        let closed = optimal_network_fidelity_ghzw(a).unwrap();
        let uni = f2_unitary_localized_optimal(ghzw_squeezing_for_mixedness(a).unwrap()).unwrap();
        v.check(closed > 0.5, format!("a={a}: closed {closed}"));
        v.check(uni > closed, format!("a={a}: localized {uni} vs closed {closed}"));
    }
    for a in [1.1, 3.0, 8.0] {
        let numeric = assisted_network_fidelity(&ghzw_from_mixedness(a).unwrap(), 2, 0).unwrap();
        v.check(numeric > 0.5, format!("a={a}: numeric {numeric}"));
    }
    v.finish(60.0);
}

#[test]
fn criterion_09_decoherence_study() {
    let mut v = Verdict::new(9, "decoherence study");
    let ghzw = StateSpec::ghzw_with_mixedness(2.0).unwrap();
    let tee = StateSpec::t_state_with_mixedness(2.8014).unwrap();
    let grid: Vec<f64> = (0..=20).map(|k| 0.1 * k as f64).collect();
    let cold = BathParams::new(0.0, 1.0, 0.0).unwrap();
    let warm = BathParams::new(1.0, 1.0, 0.0).unwrap();

    let mut curves = Vec::new();
    for (name, spec) in [("GHZ/W", ghzw), ("T", tee)] {
        let c0 = fidelity_decay_curve(&spec, &cold, &grid).unwrap();
        let c1 = fidelity_decay_curve(&spec, &warm, &grid).unwrap();
        for k in 1..grid.len() {
            let t = grid[k];
            v.check(c1[k].1 < c0[k].1, format!("{name}: n=1 not below n=0 at t={t}"));
        }
        curves.push((c0, c1));
    }
    let (f_ghzw, f_t) = (curves[0].0[0].1, curves[1].0[0].1);
    v.note(format!("F(0): GHZ/W {f_ghzw:.6}, T {f_t:.6}"));
    v.check(f_ghzw > f_t, "GHZ/W does not dominate T at t=0");

    for (name, spec) in [("GHZ/W", ghzw), ("T", tee)] {
        let none = classical_crossing_time(&spec, &cold.at(20.0).unwrap()).unwrap();
        v.check(none.is_none(), format!("{name}: crossing {none:?} with n=0"));
        let cross = classical_crossing_time(&spec, &warm.at(5.0).unwrap()).unwrap();
        let vanish = entanglement_vanishing_time(&spec, &warm.at(5.0).unwrap()).unwrap();
        v.note(format!("{name}, n=1: fidelity reaches 1/2 at gt={cross:?}, 1|23 PPT at gt={vanish:?}"));
        match (cross, vanish) {
            (Some(c), Some(e)) => v.check((c - e).abs() > 1e-3, format!("{name}: crossing {c} ~ vanishing {e}")),
            _ => v.check(false, format!("{name}: missing crossing or vanishing time with n=1")),
        }
    }
    v.finish(120.0);
}

/// Random 3-mode symplectic built from a word of elementary gates.
fn gate_word() -> impl Strategy<Value = Vec<(u8, usize, usize, f64)>> {
    prop::collection::vec((0u8..3, 0usize..3, 0usize..3, -1.5f64..1.5), 1..8)
}

fn compose(word: &[(u8, usize, usize, f64)]) -> SymplecticMatrix {
    let mut s = SymplecticMatrix::identity(3);
    for &(kind, i, j, x) in word {
        let g = match kind {
            0 if i != j => beam_splitter(i, j, x.abs() / 1.5, 3).unwrap(),
            1 => squeezer(i, x, 3).unwrap(),
            _ => phase_rotation(i, 2.0 * x, 3).unwrap(),
        };
        s = g.compose(&s).unwrap();
    }
    s
}

fn mixed_state() -> impl Strategy<Value = CovarianceMatrix> {
    (prop::collection::vec(1.0f64..4.0, 3), gate_word()).prop_map(|(nu, word)| {
        let mut d = DMatrix::zeros(6, 6);
        for (k, n) in nu.iter().enumerate() {
            d[(2 * k, 2 * k)] = *n;
            d[(2 * k + 1, 2 * k + 1)] = *n;
        }
        apply_symplectic(&CovarianceMatrix::new(d).unwrap(), &compose(&word)).unwrap()
    })
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

#[test]
fn criterion_10_invariant_suites() {
    let mut v = Verdict::new(10, "invariant suites");
    let cases = 120;
    let mut total = 0;
    let mut suite = |name: &str, result: Result<(), String>| {
        total += cases;
        v.check(result.is_ok(), format!("{name}: {}", result.err().unwrap_or_default()));
    };

    let symplectic = runner(cases).run(&gate_word(), |word| {
        let s = compose(&word);
        let scale = s.matrix().amax().max(1.0).powi(2);
        prop_assert!(s.symplectic_defect() <= 1e-10 * scale, "defect {}", s.symplectic_defect());
        Ok(())
    });
    suite("symplectic condition", symplectic.map_err(|e| e.to_string()));

    let physical = runner(cases).run(&(mixed_state(), gate_word(), 0.0f64..3.0, 0.0f64..2.0), |(sigma, word, t, n_bar)| {
        prop_assert!(check_physical(&sigma, TOL_PHYS));
        let moved = apply_symplectic(&sigma, &compose(&word)).unwrap();
        prop_assert!(check_physical(&moved, TOL_PHYS));
        let noisy = trimode::decoherence::evolve_thermal(&moved, &BathParams::new(n_bar, 1.0, t).unwrap()).unwrap();
        prop_assert!(check_physical(&noisy, TOL_PHYS));
        Ok(())
    });
    suite("physicality preservation", physical.map_err(|e| e.to_string()));

    let purity = runner(cases).run(&(mixed_state(), gate_word(), 0.0f64..2.5), |(sigma, word, r)| {
        let p = sigma.purity().unwrap();
        prop_assert!(p > 0.0 && p <= 1.0 + 1e-9);
        let moved = apply_symplectic(&sigma, &compose(&word)).unwrap().purity().unwrap();
        prop_assert!((moved - p).abs() <= 1e-7 * p.max(1e-3), "{moved} vs {p}");
        let pure = apply_symplectic(&ghzw_from_mixedness(1.0 + r).unwrap(), &compose(&word)).unwrap();
        prop_assert!((pure.purity().unwrap() - 1.0).abs() < 1e-7);
        let mixed = t_state(r).unwrap().purity().unwrap();
        prop_assert!(mixed <= 1.0 + 1e-9);
        Ok(())
    });
    suite("purity", purity.map_err(|e| e.to_string()));

    let monogamy = runner(cases).run(
        &(1.0f64..8.0, 1.0f64..3.0, 1.0f64..20.0, 1.0f64..6.0, 0.0f64..1.0, 0.0f64..1.0),
        |(a, n, s, m, bs, bt)| {
            let tol = 1e-9;
            prop_assert!(residual_contangle_ghzw(a).unwrap() >= 0.0);
            prop_assert!(residual_contangle_basset(a).unwrap() >= 0.0);
            prop_assert!(residual_contangle_noisy_ghzw(n, s).unwrap() >= 0.0);
            let numeric = residual_gaussian_contangle(&ghzw_from_mixedness(a).unwrap()).unwrap();
            prop_assert!(numeric >= -tol, "GHZ/W a={} residual {}", a, numeric);
            // any pair contangle is at least the squared log-negativity, so
            // monogamy implies this weaker inequality on every pure state
            let pure = StateSpec::AllotmentRaw { m, s: bs, t: bt }.build().unwrap();
            for probe in 0..3 {
                let whole = contangle_pure_bipartition(&pure, &ModePartition::probe(probe, 3).unwrap()).unwrap();
                let mut pairs = 0.0;
                for other in (0..3).filter(|&o| o != probe) {
                    let cut = ModePartition::new(vec![probe], vec![other]).unwrap();
                    pairs += reduced_log_negativity(&pure, &cut).unwrap().powi(2);
                }
                prop_assert!(whole - pairs >= -1e-7 * whole.max(1.0), "probe {} of ({}, {}, {})", probe, m, bs, bt);
            }
            Ok(())
        },
    );
    suite("monogamy positivity", monogamy.map_err(|e| e.to_string()));

    let ppt = runner(cases).run(&(mixed_state(), prop::sample::subsequence(vec![0usize, 1, 2], 1..3)), |(sigma, modes)| {
        let twice = partial_transpose(&partial_transpose(&sigma, &modes).unwrap(), &modes).unwrap();
        prop_assert_eq!(twice.matrix(), sigma.matrix());
        // transposing the complement gives the same spectrum
        let rest: Vec<usize> = (0..3).filter(|m| !modes.contains(m)).collect();
        let a = symplectic_eigenvalues(partial_transpose(&sigma, &modes).unwrap().matrix()).unwrap();
        let b = symplectic_eigenvalues(partial_transpose(&sigma, &rest).unwrap().matrix()).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() <= 1e-7 * x.max(1.0), "{} vs {}", x, y);
        }
        Ok(())
    });
    suite("PPT involution", ppt.map_err(|e| e.to_string()));

    v.note(format!("{total} randomized cases across 5 suites"));
    v.check(total >= 500, format!("only {total} cases"));
    v.finish(120.0);
}
