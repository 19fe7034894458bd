//! Symmetric and asymmetric 1 -> 2 telecloning.

use trimode::protocols::{
    asymmetric_feasibility, optimal_asymmetric_family, telecloning_report, telecloning_symmetric_fidelity,
    TelecloningWindow,
};
use trimode::StateSpec;

fn main() -> trimode::Result<()> {
    for a in [1.5, 3.0, 6.0] {
        println!("basset hound a={a}: F = {:.6}", telecloning_symmetric_fidelity(a)?);
    }
    let w = TelecloningWindow::new();
    println!("asymmetric window {:.2} <= a <= {:.2}", w.a_min, w.a_max);
    if let Some((lo, hi)) = asymmetric_feasibility(3.5) {
        println!("a=3.5: {lo:.4} <= t <= {hi:.4}");
        for t in [lo, 0.5 * (lo + hi), hi] {
            let (b, c) = optimal_asymmetric_family(3.5, t)?;
            println!("  t={t:.4}  F_bob {b:.4}  F_claire {c:.4}");
        }
    }
    let rep = telecloning_report(&StateSpec::ArbitraryPure { a1: 3.0, a2: 2.5, a3: 1.8 })?;
    println!("arbitrary pure resource: bob {:.4}, claire {:.4}", rep.bob.fidelity, rep.claire.fidelity);
    Ok(())
}
