//! Exact linear algebra over F2, Fp and Q, bigraded complexes, homology and
//! induced maps.

pub mod complex;
pub mod dims;
pub mod field;
pub mod homology;
pub mod matrix;
pub mod reduce;

pub use complex::{GradedComplex, GradedMap};
pub use dims::{g, BigradedDims, Grading};
pub use field::{Field, Modp, Scalar};
pub use homology::{
    homology, induced_matrices, induced_matrix, induced_matrix_of, induced_rank, induced_rank_with,
    ranks_by_source_grading, HomologyModel,
};
pub use matrix::{SparseMatrix, SparseVec};
pub use reduce::{rank, row_reduce, BitMatrix, RowReduction};

pub use num_rational::BigRational;

use thiserror::Error;

/// Runs `$body` with `$k` bound to the scalar type matching `$field`.
#[macro_export]
macro_rules! with_scalar {
    ($field:expr, $k:ident => $body:expr) => {
        match $field {
            $crate::algebra::Field::Q => {
                type $k = $crate::algebra::BigRational;
                $body
            }
            $crate::algebra::Field::Fp(_) => {
                type $k = $crate::algebra::Modp;
                $body
            }
        }
    };
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("unknown field `{0}` (expected F2, F<p> or Q)")]
    BadField(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("d∘d ≠ 0")]
    NotAComplex,
    #[error("map does not commute with the differentials")]
    NotAChainMap,
    #[error("entry from grading {from:?} to {to:?} violates declared bidegree {declared:?}")]
    Degree { from: Grading, to: Grading, declared: Grading },
}

/// Tensor product of bigraded dimension tables.
pub fn tensor_dims(a: &BigradedDims, b: &BigradedDims) -> BigradedDims {
    a.tensor(b)
}
