//! Exact arithmetic: cyclotomic numbers, matrices, and splitting of
//! commutative algebras into idempotents.

pub mod cyclotomic;
pub mod idempotents;
pub mod matrix;
pub mod roots;
pub mod span;

pub use cyclotomic::{euler_phi, Cyclotomic, CyclotomicField, CyclotomicNumber};
pub use idempotents::{idempotents_of_commutative_algebra, StructureConstants};
pub use matrix::ExactMatrix;
pub use span::EchelonSpan;

pub type Rational = num_rational::BigRational;
