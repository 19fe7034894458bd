//! Bipartite and residual tripartite entanglement of a few resources.

use trimode::entanglement::analyze;
use trimode::StateSpec;

fn main() -> trimode::Result<()> {
    for spec in [StateSpec::ghzw_with_mixedness(3.0)?, StateSpec::BassetHound { a: 3.0 }, StateSpec::TState { r: 0.9 }] {
        let rep = analyze(&spec)?;
        println!("{}:", rep.family);
        for (cut, en) in &rep.logneg {
            let g = rep.contangle.get(cut).map_or("-".to_string(), |g| format!("{g:.4}"));
            println!("  {cut:<5} E_N {en:.4}  G {g}");
        }
        match rep.residual_gaussian_contangle {
            Some(g) => println!("  residual contangle {g:.4}"),
            None => println!("  residual contangle not available"),
        }
    }
    Ok(())
}
