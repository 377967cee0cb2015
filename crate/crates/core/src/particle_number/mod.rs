//! Particle-number conserving systems.

pub mod control;
pub mod nc_algebra;
pub mod opdm;

pub use control::{has_invariant_skew_form, nc_pure_controllable, sp_basis, u_basis, NcCase, NcVerdict};
pub use nc_algebra::{ccommutator, cmul, general_nc_structure, iota, iota_inverse, nc_generators, nc_predicted, NcStructure};
pub use opdm::{evolve_opdm, unitary, OneParticleDM};
