//! Sparse operator algebra over Majorana monomials and Pauli strings.

pub mod families;
pub mod json;
pub mod jw;
pub mod monomial;
pub mod operator;

pub use families::{build_named_family, hermitian, w_family};
pub use json::{parse_generators, AnyOperator, FieldMode, OperatorJson};
pub use jw::{jordan_wigner, jordan_wigner_raw, parity_operator, parity_skew};
pub use monomial::{Ambient, Key, Rep};
pub use operator::{Operator, SparseOperator};
