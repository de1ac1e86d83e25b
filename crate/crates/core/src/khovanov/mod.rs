//! Khovanov homology from the cube of resolutions.
//!
//! Generators carry `i = |I| - n_-` and
//! `j = (#1 - #x) + |I| + n_+ - 2 n_-` (stored in half units). The unknot
//! sits at `(0, ±1)` and the differential has bidegree `(1, 0)`.

pub mod cube;
pub mod local;
pub mod mutation;
pub mod skein;

use thiserror::Error;

use crate::algebra::{homology, AlgebraError, BigradedDims, Field, GradedComplex, GradedMap, Scalar, SparseMatrix};
use crate::diagrams::{DiagramError, PDCode};
use crate::with_scalar;

pub use cube::{Face, KhComplex, MAX_FREE_CROSSINGS};
pub use local::kh_local;
pub use mutation::{verify_kh_mutation, MutationReport};
pub use skein::{skein_edge_map, verify_merge_exactness, verify_skein_exactness, MergeReport, SkeinMap, SkeinReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KhError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} free crossings exceed the limit of {MAX_FREE_CROSSINGS}")]
    TooLarge(usize),
    #[error("face error: {0}")]
    Face(String),
    #[error("basepoint missing or out of range")]
    Basepoint,
    #[error("tangle boundary of {0} points exceeds the limit of {limit}", limit = local::MAX_BOUNDARY)]
    Boundary(usize),
}

/// The Khovanov complex of `pd`.
pub fn ckh<K: Scalar>(pd: &PDCode, field: Field) -> Result<KhComplex<K>, KhError> {
    KhComplex::new(Face::full(pd)?, field)
}

/// Khovanov homology dimensions, computed crossing by crossing.
pub fn kh(pd: &PDCode, field: Field) -> Result<BigradedDims, KhError> {
    kh_local(pd, field)
}

/// Khovanov homology dimensions from the full cube of resolutions.
pub fn kh_cube(pd: &PDCode, field: Field) -> Result<BigradedDims, KhError> {
    with_scalar!(field, K => Ok(homology(&ckh::<K>(pd, field)?.complex)))
}

/// Resolves the basepoint: an explicit edge, else the diagram's marked edge,
/// else edge (or free loop) 0.
fn basepoint_of(pd: &PDCode, p: Option<usize>) -> Result<usize, KhError> {
    let p = p.or(pd.basepoint()).unwrap_or(0);
    let limit = if pd.n_edges() == 0 { pd.free_loops() } else { pd.n_edges() };
    if p >= limit {
        return Err(KhError::Basepoint);
    }
    Ok(p)
}

/// Chain map `X_p`: multiplies the circle through `p` by `x` at every vertex.
pub fn basepoint_action<K: Scalar>(c: &KhComplex<K>, p: usize) -> Result<GradedMap<K>, KhError> {
    let face = &c.face;
    let field = c.complex.field();
    let one = K::one(field);
    let mut columns = Vec::with_capacity(face.len());
    for v in 0..face.n_vertices() {
        let circle = face.circle_of(v, p);
        for label in 0..1u64 << face.circles(v) {
            if label >> circle & 1 == 1 {
                columns.push(Vec::new());
            } else {
                columns.push(vec![(face.offset(v) + (label | 1 << circle) as usize, one.clone())]);
            }
        }
    }
    let m = SparseMatrix::from_columns(face.len(), field, columns);
    Ok(GradedMap::new(c.complex.clone(), c.complex.clone(), m, (0, -4))?)
}

/// Kernel of `X_p` with `j` raised by one.
pub fn reduced_complex<K: Scalar>(c: &KhComplex<K>, p: usize) -> Result<GradedComplex<K>, KhError> {
    let face = &c.face;
    let mut keep = Vec::new();
    for v in 0..face.n_vertices() {
        let circle = face.circle_of(v, p);
        for label in 0..1u64 << face.circles(v) {
            if label >> circle & 1 == 1 {
                keep.push(face.offset(v) + label as usize);
            }
        }
    }
    Ok(c.complex.subcomplex(&keep)?.shifted((0, 2)))
}

/// Reduced Khovanov homology at basepoint `p` (see [`basepoint_of`]).
pub fn kh_reduced(pd: &PDCode, p: Option<usize>, field: Field) -> Result<BigradedDims, KhError> {
    let p = basepoint_of(pd, p)?;
    with_scalar!(field, K => {
        let c = ckh::<K>(pd, field)?;
        Ok(homology(&reduced_complex(&c, p)?))
    })
}

/// The Khovanov homology of the unknot.
pub fn unknot_dims() -> BigradedDims {
    BigradedDims::from_int_pairs(&[((0, 1), 1), ((0, -1), 1)])
}

/// Whether `pd` is an unlink, decided by its F2 rank `2^components` (a
/// detection result for Khovanov homology) or by having no crossings.
pub fn is_unlink(pd: &PDCode) -> Result<bool, KhError> {
    if pd.n_crossings() == 0 {
        return Ok(true);
    }
    Ok(kh(pd, Field::F2)?.total() == 1usize << pd.n_components())
}
