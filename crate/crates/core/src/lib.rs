//! Cayley graphs of large order for the degree-diameter problem.
//!
//! The crate builds and verifies three families of constructions:
//! diameter-3 graphs on `UT(3,p) × Z₂` ([`heisenberg`]), semidirect products
//! `Z_mᵏ ⋊ K` with symbolic per-element certificates ([`semidirect`]), and an
//! odd-diameter family over dihedral groups ([`dihedral`]).

pub mod abelian;
pub mod cayley;
pub mod certificate;
pub mod dihedral;
pub mod group;
pub mod heisenberg;
pub mod intmat;
pub mod published;
pub mod semidirect;
