//! Exact computation of genus-expanded free energies for three solvable
//! models — topological 1D gravity, the Hermitian one-matrix model, and
//! topological 2D gravity — in renormalized coupling constants, together
//! with the coordinate transforms, spectral-curve deformations, and an
//! independent verification harness for the defining constraint equations.
//!
//! Everything is exact rational arithmetic; the free energies for genus
//! `g >= 2` come out as finite sparse polynomials, reproduced bit-for-bit
//! against embedded reference tables by the `verify` module.

pub mod algebra;
pub mod cli;
pub mod coords;
pub mod engines;
pub mod tseries;
pub mod spectral;
pub mod verify;

pub use algebra::{Monomial, Poly, Policy, Rational, TruncatedSeries, VarId};
