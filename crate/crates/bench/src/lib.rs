//! Benchmark inputs shared by the criterion targets.

use fermilie::algebra::{build_named_family, SparseOperator};
use fermilie::quasifree::{operator_to_t, Mat};
use fermilie::scalar::Q;

/// Exact generators of a named family.
pub fn family(name: &str, d: usize) -> Vec<SparseOperator<Q>> {
    build_named_family::<Q>(name, d).expect("known family")
}

/// `T` matrices of a quadratic family.
pub fn t_family(name: &str, d: usize) -> Vec<Mat<Q>> {
    family(name, d).iter().map(|o| operator_to_t(o).expect("quadratic")).collect()
}
