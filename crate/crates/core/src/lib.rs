//! Exact computations for screening the Dirac series of the real form
//! E7(-25): the root datum in explicit coordinates, the 56 chambers
//! containing the compact positive system, lambda and spin norms, the
//! u-small hull, and the enumerations built on top of them.
//!
//! Everything is exact. Lattice weights are carried as integer
//! fundamental-weight coordinates; anything fractional is a [`Rational`].

pub mod atlas;
pub mod cone;
pub mod engine;
pub mod error;
pub mod lp;
pub mod norms;
pub mod rational;
pub mod screening;
pub mod structure;
pub mod verify;
pub mod weyl;

pub use engine::Engine;
pub use error::{Error, Result};
pub use rational::Rational;
pub use structure::{AmbientVector, Basis, InfChar, KType, RootDatum, WeightLattice, Weight};
