//! Spans, Lie closure, centralizers, commutants and classification.

pub mod catalog;
pub mod centralizer;
pub mod commutant;
pub mod closure;
pub mod linalg;
pub mod space;
pub mod structure;

pub use centralizer::centralizer_in;
pub use closure::{lie_closure, DEFAULT_CAP};
pub use space::OperatorSpace;
pub use catalog::{Simple, Structure};
pub use structure::{structure_profile, structure_profile_seeded, Block, StructureReport};
pub use commutant::commutant_dimension;
