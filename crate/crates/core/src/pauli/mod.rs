//! Pauli-group and stabilizer-group algebra in the binary symplectic representation.

mod bits;
pub(crate) mod gf2;
mod group;
mod operator;

pub use bits::Bits;
pub use group::{coset_elements, in_span, SpanCertificate, StabilizerGroup};
pub use operator::{Basis, Pauli, PauliOperator};

pub(crate) use operator::check_index;
