//! Dynamic system Lie algebras of fermionic and spin control systems.
//!
//! The crate provides an exact sparse operator algebra over Majorana
//! monomials and Pauli strings, a Lie closure and classification engine,
//! quasifree (Gaussian) fermion tools, translation-invariant system analysis,
//! and a dense Fock-space oracle used to cross-check all of the above.

pub mod algebra;
pub mod error;
pub mod fock;
pub mod lie;
pub mod particle_number;
pub mod quasifree;
pub mod scalar;
pub mod ti_quasifree;
pub mod translation;

pub use error::{Error, Result};
