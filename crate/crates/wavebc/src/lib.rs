//! Mode analysis and finite-difference experiments for boundary conditions of
//! the second-order wave equation on a strip.
//!
//! The crate has two halves:
//!
//! * **Analysis** ([`branch`], [`analysis`]): Laplace–Fourier symbol
//!   evaluation with the fixed branch of `κ = √(s² + ω²)`, eigenvalue and
//!   generalized-eigenvalue location for the four scalar boundary conditions,
//!   the coupled-pair classification, the general-system first-order symbol
//!   with its eigenvalue split and block normal form, and the 1D
//!   reflection-cascade roots.
//! * **Experiments** ([`solver`], [`experiments`]): the leapfrog scheme on
//!   the unit strip with periodic `y` and centered ghost-cell closures at
//!   `x = 0, 1`, plus manufactured-solution convergence tables, instability
//!   growth studies, and boundary-forcing studies.
//!
//! The [`config`] module carries the CLI configuration and dispatch used by
//! the `wavebc` binary.

pub mod analysis;
pub mod branch;
pub mod config;
pub mod experiments;
pub mod solver;
