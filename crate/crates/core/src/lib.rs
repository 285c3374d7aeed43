//! Exact computations with rational Cherednik algebras at `t = 0`.

pub mod arith;
pub mod bv;
pub mod character;
pub mod error;
pub mod groups;
pub mod pbw;
pub mod parabolic;
pub mod poly;
pub mod restricted;
pub mod verma;

pub use arith::{Cyclotomic, CyclotomicField, ExactMatrix, Rational};
pub use error::{Error, Result};
