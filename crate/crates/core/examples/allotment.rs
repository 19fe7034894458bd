//! Engineering an arbitrary pure three-mode state, and seeded sampling.

use trimode::states::{random_pure_sample, solve_allotment_params};

fn main() -> trimode::Result<()> {
    let target = (2.869, 3.225, 4.329);
    let sol = solve_allotment_params(target.0, target.1, target.2)?;
    println!("m = {:.6}, s = {:.6}, t = {:.6} (residual {:.1e})", sol.m, sol.s, sol.t, sol.residual_error);
    println!("rebuilt local mixednesses: {:?}", sol.state()?.local_mixednesses());

    let set = random_pure_sample(2.0, 5, 42)?;
    print!("{}", set.to_csv());
    Ok(())
}
