//! Translation-invariant quadratic fermionic systems.

pub mod ell;
pub mod fourier;
pub mod gap;

pub use ell::{
    decompose_ti_quadratic, ell_ham, hq_ham, is_cyclic, kmax, kraus_generation_check, qd_generators, qd_predicted,
    qd_structure, reduce_index, trans_com, EllDecomposition, Label, QdReport,
};
pub use fourier::{
    connecting_block_rotation, ell_expectations, fixed_mode_occupations, fourier_blocks, fourier_occupation_covariance,
    inverse_fourier_blocks, is_doubly_cyclic, random_ti_generator, random_ti_ham,
    random_ti_pure_state, same_ti_orbit, ti_orbit_invariants, FourierBlocks,
};
pub use gap::{
    dense_gap, gap_bound, gap_experiment, gap_model, gap_scan, gap_scan_csv, random_gap_coefficients, ti_block_levels,
    ti_gap, GapInfo, GapResult,
};
