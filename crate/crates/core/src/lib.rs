//! Three-mode Gaussian states in phase space.
//!
//! The crate builds the usual three-mode families (GHZ/W, noisy GHZ/W,
//! T states, basset hound states, arbitrary pure states via the allotment
//! network), measures how their entanglement is shared, and evaluates
//! teleportation-network and telecloning fidelities, with or without local
//! thermal decoherence.
//!
//! ```
//! use trimode::states::ghzw_from_mixedness;
//! use trimode::entanglement::residual_contangle_ghzw;
//!
//! let sigma = ghzw_from_mixedness(2.0).unwrap();
//! assert!((sigma.local_mixedness(0).unwrap() - 2.0).abs() < 1e-9);
//! assert!(residual_contangle_ghzw(2.0).unwrap() > 0.0);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod decoherence;
pub mod entanglement;
pub mod error;
pub mod optimize;
pub mod output;
pub mod phase_space;
pub mod protocols;
pub mod states;

pub use error::{Error, Result};
pub use phase_space::{CovarianceMatrix, ModePartition, SymplecticMatrix};
pub use states::StateSpec;
