//! Network fidelity of GHZ/W and T resources in local thermal baths.

use trimode::decoherence::{classical_crossing_time, entanglement_vanishing_time, fidelity_decay_curve, BathParams};
use trimode::StateSpec;

fn main() -> trimode::Result<()> {
    let grid: Vec<f64> = (0..=8).map(|k| 0.1 * k as f64).collect();
    let resources = [("GHZ/W a=2", StateSpec::ghzw_with_mixedness(2.0)?), ("T a=2.8014", StateSpec::t_state_with_mixedness(2.8014)?)];
    for (name, spec) in resources {
        for n_bar in [0.0, 1.0] {
            let bath = BathParams::new(n_bar, 1.0, 0.0)?;
            let curve = fidelity_decay_curve(&spec, &bath, &grid)?;
            let f: Vec<String> = curve.iter().map(|(_, f)| format!("{f:.3}")).collect();
            println!("{name:<11} n={n_bar}: {}", f.join(" "));
        }
        let warm = BathParams::new(1.0, 1.0, 5.0)?;
        println!(
            "  n=1: F = 1/2 at gt {:?}, 1|23 separable from gt {:?}",
            classical_crossing_time(&spec, &warm)?,
            entanglement_vanishing_time(&spec, &warm)?
        );
    }
    Ok(())
}
