//! Exciton states of a circular chromophore ring and their identity with the
//! quantum Fourier transform.
//!
//! The crate is split along the physics:
//!
//! * [`exciton_ring`] builds the nearest-neighbour circulant Hamiltonian of a
//!   `2N`-site ring and its analytic exciton spectrum.
//! * [`qft_equivalence`] applies the site-basis phase relabeling that turns
//!   every exciton state into a column of the DFT matrix, and compares the
//!   18-site ring with the 4-qubit circuit.
//! * [`circuit_sim`] is a small state-vector simulator with `H`, controlled
//!   `R_p` and `SWAP` gates, plus the textbook QFT circuit synthesis.
//! * [`hidden_subgroup`] builds coset states over `Z_N` and recovers the
//!   subgroup generator from their Fourier transform.
//! * [`cli`] is the command-line front end.

pub mod circuit_sim;
pub mod cli;
pub mod error;
pub mod exciton_ring;
pub mod format;
pub mod hidden_subgroup;
pub mod linalg;
pub mod qft_equivalence;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, ComplexVector};
