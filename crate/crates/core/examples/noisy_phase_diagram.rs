//! Separability classes and promiscuous sharing of noisy GHZ/W states on a dB grid.
//! Digits give the class; '*' marks points where pairwise and genuine
//! tripartite entanglement coexist.

use trimode::entanglement::{classify_noisy_ghzw, promiscuity_predicate, residual_contangle_noisy_ghzw};
use trimode::phase_space::from_decibels;

fn main() -> trimode::Result<()> {
    println!("rows: n from 4 dB (top) to 0 dB; columns: s from 0 to 7 dB");
    for i in (0..=16).rev() {
        let n = from_decibels(4.0 * i as f64 / 16.0);
        let row: String = (0..=56)
            .map(|j| {
                let s = from_decibels(7.0 * j as f64 / 56.0);
                match classify_noisy_ghzw(n, s) {
                    Ok(_) if promiscuity_predicate(n, s) => '*',
                    Ok(c) => char::from_digit(c.number() as u32, 10).unwrap(),
                    Err(_) => '?',
                }
            })
            .collect();
        println!("{row}");
    }
    println!("residual contangle at n = 0 dB, s = 7 dB: {:.3}", residual_contangle_noisy_ghzw(1.0, from_decibels(7.0))?);
    Ok(())
}
