//! The three-mode families and their local mixednesses.

use trimode::phase_space::symplectic_eigenvalues;
use trimode::StateSpec;

fn main() -> trimode::Result<()> {
    let specs = [
        StateSpec::ghzw_with_mixedness(2.0)?,
        StateSpec::noisy_ghzw_from_s(1.5, 5.0)?,
        StateSpec::t_state_with_mixedness(2.8014)?,
        StateSpec::BassetHound { a: 3.0 },
        StateSpec::ArbitraryPure { a1: 2.0, a2: 1.5, a3: 2.3 },
    ];
    for spec in specs {
        let sigma = spec.build()?;
        let nu = symplectic_eigenvalues(sigma.matrix())?;
        let a: Vec<String> = sigma.local_mixednesses().iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "{:<16} a = [{}]  purity {:.4}  nu_max {:.4}",
            spec.family(),
            a.join(", "),
            sigma.purity()?,
            nu.max()
        );
    }
    Ok(())
}
