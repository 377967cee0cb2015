//! Translation-invariant spin chains and fermionic rings.

pub mod profile;

pub use profile::{
    fermion_dense_profiles, fermion_h, fermion_rank_profile, prime_structure, spin_dense_profile, spin_rank_profile, Kind,
    RankProfile,
};
pub mod symmetrize;

pub use symmetrize::{bounded_range_algebra, bounded_range_generators, ti_symmetrize};
pub mod traces;

pub use traces::{
    witness_parts,
    nn_witness, obstruction_traces, odd_closed_form, odd_closed_form_corrected, odd_closed_form_stated, odd_polynomial,
    odd_polynomial_stated, spin_range_witness,
    spin_shift_trace, translation_unitary_expansion_check, WitnessReport,
};
pub mod tables;

pub use tables::{table_cell, fermion_table, fermion_table_expected, spin_table, spin_table_expected, Table, TableCell};
