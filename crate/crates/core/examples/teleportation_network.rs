//! Three-party network fidelity on GHZ/W resources: numeric protocol against
//! the closed form, next to the reduced and fully localized two-party values.

use trimode::protocols::{
    assisted_network_fidelity, f2_reduced_optimal, f2_unitary_localized_optimal, optimal_network_fidelity_ghzw,
};
use trimode::states::{ghzw_from_mixedness, ghzw_squeezing_for_mixedness};

fn main() -> trimode::Result<()> {
    println!("    a   r_bar  F_network  closed   F2_red  F2_loc");
    for a in [1.5, 2.0, 3.0, 4.0, 6.0] {
        let r_bar = ghzw_squeezing_for_mixedness(a)?;
        let numeric = assisted_network_fidelity(&ghzw_from_mixedness(a)?, 0, 1)?;
        println!(
            "{a:5.2}  {r_bar:.4}  {numeric:.6}  {:.6}  {:.4}  {:.4}",
            optimal_network_fidelity_ghzw(a)?,
            f2_reduced_optimal(r_bar)?,
            f2_unitary_localized_optimal(r_bar)?
        );
    }
    Ok(())
}
