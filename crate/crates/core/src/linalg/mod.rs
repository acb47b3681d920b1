//! Exact integer linear algebra: Smith Normal Form with unimodular
//! transforms, rank, cokernel invariants and lattice membership.
//!
//! Entries are arbitrary-precision integers throughout; intermediate values
//! during reduction routinely exceed machine width.

mod matrix;
mod rational;
mod snf;

pub use matrix::IntegerMatrix;
pub use rational::{rational, RationalMatrix};
pub(crate) use snf::solve_with;
pub use snf::{
    cokernel_invariants, integer_kernel, lattice_contains, rank, smith_normal_form,
    AbelianInvariants, SnfDecomposition,
};
