//! Quantum correlations of a dipolar-coupled spin-1/2 pair prepared in
//! thermal equilibrium and driven by the two-quantum NMR Hamiltonian.
//!
//! The crate computes quantum discord, classical correlations, mutual
//! information, concurrence and the multiple-quantum coherence intensities
//! G_k of the evolved dimer state, in closed form and, independently, by
//! numerical oracles (generic unitary propagation, dense diagonalization,
//! projective-measurement minimization, spin-flip concurrence). Every
//! closed form ships with the oracle that checks it; [`verify`] runs the
//! whole suite.
//!
//! All formulas reduce to the dimensionless pair (β, ξ): β = ħω₀/kT is the
//! inverse temperature of the initial state and ξ = |cos(Dτ)| collapses the
//! coupling/preparation-time dependence. The measurable second-order
//! coherence intensity G = ½·tanh(β/2)·(1−ξ²) provides a third coordinate;
//! any two of (β, ξ, G) determine the third ([`point::resolve_point`]).

pub mod coherence;
pub mod discord;
pub mod entanglement;
pub mod error;
pub mod matrix;
pub mod numeric;
pub mod point;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
