//! Bigraded chain complexes and chain maps.
//!
//! Every complex has a differential that preserves the second grading, so
//! homology splits into independent blocks indexed by it.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::dims::{BigradedDims, Grading};
use crate::algebra::field::{Field, Scalar};
use crate::algebra::matrix::SparseMatrix;
use crate::algebra::AlgebraError;

/// A finite complex with one grading per generator (half units) and a
/// differential stored column-wise: column `x` is `d(x)`.
#[derive(Clone, Debug)]
pub struct GradedComplex<K> {
    gradings: Vec<Grading>,
    differential: SparseMatrix<K>,
    bidegree: Grading,
}

impl<K: Scalar> GradedComplex<K> {
    /// Validates the declared bidegree and `d∘d = 0`.
    pub fn new(gradings: Vec<Grading>, differential: SparseMatrix<K>, bidegree: Grading) -> Result<Self, AlgebraError> {
        let n = gradings.len();
        if differential.rows() != n || differential.cols() != n {
            return Err(AlgebraError::Shape(format!(
                "differential is {}x{}, expected {n}x{n}",
                differential.rows(),
                differential.cols()
            )));
        }
        if bidegree.1 != 0 {
            return Err(AlgebraError::Shape("differential must preserve the second grading".into()));
        }
        check_degree(&differential, &gradings, &gradings, bidegree)?;
        let c = GradedComplex { gradings, differential, bidegree };
        if !c.differential.mul(&c.differential).is_zero() {
            return Err(AlgebraError::NotAComplex);
        }
        Ok(c)
    }

    pub fn zero_differential(gradings: Vec<Grading>, field: Field, bidegree: Grading) -> Self {
        let n = gradings.len();
        GradedComplex { gradings, differential: SparseMatrix::zero(n, n, field), bidegree }
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn field(&self) -> Field {
        self.differential.field()
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn differential(&self) -> &SparseMatrix<K> {
        &self.differential
    }

    pub fn bidegree(&self) -> Grading {
        self.bidegree
    }

    /// Chain-group dimensions per bigrading.
    pub fn chain_dims(&self) -> BigradedDims {
        let mut d = BigradedDims::new();
        for g in &self.gradings {
            d.add(*g, 1);
        }
        d
    }

    /// Generator indices grouped by second grading.
    pub fn blocks(&self) -> BTreeMap<i32, Vec<usize>> {
        let mut b: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.gradings.iter().enumerate() {
            b.entry(g.1).or_default().push(i);
        }
        b
    }

    /// Same complex with every grading moved by `by`.
    pub fn shifted(&self, by: Grading) -> Self {
        GradedComplex {
            gradings: self.gradings.iter().map(|g| (g.0 + by.0, g.1 + by.1)).collect(),
            differential: self.differential.clone(),
            bidegree: self.bidegree,
        }
    }

    /// Restriction to a subset of generators closed under the differential
    /// (a subcomplex). Returns the subcomplex.
    pub fn subcomplex(&self, keep: &[usize]) -> Result<Self, AlgebraError> {
        let sub = self.differential.select(keep, keep);
        // Closure: d of a kept generator must land in kept generators.
        let mut kept = vec![false; self.len()];
        for &k in keep {
            kept[k] = true;
        }
        for &k in keep {
            if self.differential.column(k).iter().any(|(r, _)| !kept[*r]) {
                return Err(AlgebraError::Shape("not a subcomplex".into()));
            }
        }
        GradedComplex::new(keep.iter().map(|&i| self.gradings[i]).collect(), sub, self.bidegree)
    }
}

fn check_degree<K: Scalar>(
    m: &SparseMatrix<K>,
    src: &[Grading],
    tgt: &[Grading],
    deg: Grading,
) -> Result<(), AlgebraError> {
    for (c, col) in m.columns().iter().enumerate() {
        for (r, _) in col {
            let (s, t) = (src[c], tgt[*r]);
            if (t.0 - s.0, t.1 - s.1) != deg {
                return Err(AlgebraError::Degree { from: s, to: t, declared: deg });
            }
        }
    }
    Ok(())
}

/// A chain map between two complexes with a fixed bidegree.
#[derive(Clone, Debug)]
pub struct GradedMap<K> {
    pub source: Arc<GradedComplex<K>>,
    pub target: Arc<GradedComplex<K>>,
    matrix: SparseMatrix<K>,
    bidegree: Grading,
}

impl<K: Scalar> GradedMap<K> {
    /// Validates shape, bidegree and the chain-map identity `d f = f d`.
    pub fn new(
        source: Arc<GradedComplex<K>>,
        target: Arc<GradedComplex<K>>,
        matrix: SparseMatrix<K>,
        bidegree: Grading,
    ) -> Result<Self, AlgebraError> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(AlgebraError::Shape("map shape mismatch".into()));
        }
        check_degree(&matrix, source.gradings(), target.gradings(), bidegree)?;
        let lhs = target.differential().mul(&matrix);
        let rhs = matrix.mul(source.differential());
        if lhs != rhs {
            return Err(AlgebraError::NotAChainMap);
        }
        Ok(GradedMap { source, target, matrix, bidegree })
    }

    pub fn identity(c: Arc<GradedComplex<K>>) -> Self {
        let m = SparseMatrix::identity(c.len(), c.field());
        GradedMap { source: c.clone(), target: c, matrix: m, bidegree: (0, 0) }
    }

    pub fn matrix(&self) -> &SparseMatrix<K> {
        &self.matrix
    }

    pub fn bidegree(&self) -> Grading {
        self.bidegree
    }

    /// Composition `other ∘ self`.
    pub fn then(&self, other: &GradedMap<K>) -> Result<GradedMap<K>, AlgebraError> {
        if !Arc::ptr_eq(&self.target, &other.source) && self.target.len() != other.source.len() {
            return Err(AlgebraError::Shape("composition mismatch".into()));
        }
        Ok(GradedMap {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
            bidegree: (self.bidegree.0 + other.bidegree.0, self.bidegree.1 + other.bidegree.1),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Modp;

    #[test]
    fn rejects_d_squared_nonzero() {
        // a -> b -> c with both maps 1 over F3: d² = 1 ≠ 0.
        let d =
            SparseMatrix::<Modp>::from_triplets(3, 3, Field::Fp(3), [(1, 0, Modp::new(1, 3)), (2, 1, Modp::new(1, 3))]);
        let gr = vec![(0, 0), (2, 0), (4, 0)];
        assert!(matches!(GradedComplex::new(gr, d, (2, 0)), Err(AlgebraError::NotAComplex)));
    }

    #[test]
    fn rejects_wrong_bidegree() {
        let d = SparseMatrix::<Modp>::from_triplets(2, 2, Field::F2, [(1, 0, Modp::new(1, 2))]);
        let err = GradedComplex::new(vec![(0, 0), (4, 0)], d, (2, 0)).unwrap_err();
        assert!(matches!(err, AlgebraError::Degree { .. }));
    }
}
