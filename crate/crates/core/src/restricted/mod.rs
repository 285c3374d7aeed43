//! The restricted algebras `H^b_c`, their baby Verma modules and blocks.

pub mod algebra;
pub mod blocks;
pub mod module;

pub use algebra::{ProductRule, RestrictedAlgebra, DEFAULT_ALGEBRA_CAP};
pub use blocks::{
    center_surjectivity, central_idempotents, cm_partition, dim_e_simple, distinguished_rep, linking_partition,
    simple_module, Block, BlockPartition, SurjectivityReport,
};
pub use module::{baby_verma, simple_head, FdModule, Head};
