//! Exact toolkit for finite-dimensional Leibniz algebras given by structure
//! constants over ℚ or GF(p).
//!
//! Conventions: left Leibniz identity `[x,[y,z]] = [[x,y],z] + [y,[x,z]]`,
//! vectors are coordinate rows, operators act on column vectors.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod families;
pub mod field;
pub mod invariants;
pub mod matrix;
pub mod poly;
pub mod search;
pub mod subspace;

pub use algebra::{AlgebraTable, MultOperator, Side};
pub use error::{Error, Result};
pub use field::{FieldSpec, Prime, Scalar};
pub use matrix::{rref, Matrix};
pub use poly::{char_poly_2x2, is_irreducible_quadratic, QuadraticPoly};
pub use subspace::{
    enumerate_subspaces, gaussian_binomial, subspace_intersect, subspace_sum, Subspace,
};
