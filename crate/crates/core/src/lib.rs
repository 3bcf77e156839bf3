//! Exact census of quotient-singularity configurations on rational homology
//! projective planes.
//!
//! The crate is layered bottom-up:
//!
//! - [`hjcf`]: Hirzebruch-Jung continued fractions, T-singularity classes,
//!   discrepancies of cyclic quotient singularities.
//! - [`singularity`]: cyclic, dihedral and polyhedral quotient singularities
//!   with their dual graphs, group orders and local invariants.
//! - [`lattice`]: integral Gram lattices, rational diagonalization, the
//!   formal canonical-class extension and discriminant forms.
//! - [`padic`]: square classes, Hilbert symbols and the local invariants of
//!   rational quadratic forms.
//! - [`obstruction`]: embedding obstructions into unimodular lattices.
//! - [`census`]: the end-to-end case enumeration and report.
//!
//! Everything is computed with arbitrary-precision integers and rationals.

pub mod census;
pub mod commands;
mod error;
pub mod hjcf;
pub mod lattice;
pub mod obstruction;
pub mod padic;
pub mod rational;
pub mod singularity;
pub mod spec;

pub use error::{Error, Result};
pub use hjcf::HjString;
pub use lattice::{DiagonalForm, GramLattice};
pub use singularity::QuotientSingularity;
