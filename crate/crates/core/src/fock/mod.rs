//! Dense Fock-space oracle.

pub mod crosscheck;
pub mod dense;
pub mod perm;
pub mod state;

pub use dense::{dense, dense_raw, dense_reflection, dense_translation, DenseOperator, MAX_DENSE};
pub use perm::{reflection_perm, translation_perm, PhasedPerm};
pub use state::{covariance_of, dense_expectation, dense_majoranas, quasifree_state_dense};
pub use crosscheck::{crosscheck, dense_closure_dim, CrossCheck};
