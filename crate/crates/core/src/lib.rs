//! Numerical engine for the lattice of subspaces of a finite-dimensional
//! complex Hilbert space.
//!
//! The crate covers the lattice operations themselves ([`lattice`]), Möbius
//! (non-additivity) operators ([`mobius`]), non-distributivity and
//! total-probability deviation projectors ([`distributivity`]), moments of
//! those operators in a state ([`observables`]), interval constraints coming
//! from modularity ([`modular`]), projectors built from finite coherent states
//! ([`coherent`]) and the additive classical baseline ([`classical`]).
//!
//! The [`cli`] module holds the report-producing commands behind the
//! `qlattice` binary.

pub mod classical;
pub mod cli;
pub mod coherent;
pub mod distributivity;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod mobius;
pub mod modular;
pub mod numerics;
pub mod observables;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use lattice::Subspace;
pub use numerics::{ComplexMatrix, Tolerance, C64};
