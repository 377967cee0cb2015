//! Quadratic Hamiltonians, covariance matrices, and quasifree controllability.

pub mod control;
pub mod covariance;
pub mod ham;

pub use control::{
    matrix_closure, quasifree_pure_controllable, so_basis, tangent_dimension, tensor_square_controllable,
    PureVerdict, TensorVerdict,
};
pub use covariance::{
    canonical_form, evolve_covariance, is_pure, number_conserving_covariance, pfaffian, quadratic_expectation, random_pure_covariance, same_orbit, same_orbit_connected,
    singular_values, wick_expectation, CanonicalForm, CovarianceMatrix,
};
pub use ham::{convert_cdef_to_ab, ham_bracket, ham_to_t, operator_to_t, t_to_ham, t_to_operator, CMat, Mat, QuadraticHam, TMatrix};
