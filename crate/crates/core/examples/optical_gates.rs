//! Beam splitters and squeezers acting on covariance matrices.

use trimode::phase_space::{apply_symplectic, beam_splitter, squeezer, symplectic_eigenvalues, two_mode_standard_form};
use trimode::CovarianceMatrix;

fn main() -> trimode::Result<()> {
    let vac = CovarianceMatrix::vacuum(2);
    let squeezed = apply_symplectic(&vac, &squeezer(0, 0.8, 2)?.compose(&squeezer(1, -0.8, 2)?)?)?;
    let tms = apply_symplectic(&squeezed, &beam_splitter(0, 1, 0.5, 2)?)?;
    println!("two-mode squeezed vacuum from two single-mode squeezers:\n{tms}");

    let noisy = CovarianceMatrix::thermal(2, 0.3);
    let s = squeezer(0, 0.4, 2)?.compose(&beam_splitter(0, 1, 0.3, 2)?)?;
    let mixed = apply_symplectic(&noisy, &s)?;
    println!("symplectic spectrum (unchanged by S): {:?}", symplectic_eigenvalues(mixed.matrix())?.values());
    println!("standard form:\n{}", two_mode_standard_form(&mixed)?);
    println!("defect of S^T Omega S - Omega: {:.1e}", s.symplectic_defect());
    Ok(())
}
