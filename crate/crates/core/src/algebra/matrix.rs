//! Column-sparse matrices over a field.

use crate::algebra::field::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<K> = Vec<(usize, K)>;

/// A `rows × cols` matrix stored by columns. Each column is a sparse vector
/// with strictly increasing row indices and no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<K> {
    rows: usize,
    field: Field,
    columns: Vec<SparseVec<K>>,
}

impl<K: Scalar> SparseMatrix<K> {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        SparseMatrix { rows, field, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zero(n, n, field);
        for (i, col) in m.columns.iter_mut().enumerate() {
            col.push((i, K::one(field)));
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed and
    /// zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: Field,
        triplets: impl IntoIterator<Item = (usize, usize, K)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, K)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            buckets[c].push((r, v));
        }
        let columns = buckets.into_iter().map(normalize).collect();
        SparseMatrix { rows, field, columns }
    }

    /// Builds from sparse columns (any order, duplicates summed).
    pub fn from_columns(rows: usize, field: Field, columns: Vec<SparseVec<K>>) -> Self {
        let columns: Vec<_> = columns.into_iter().map(normalize).collect();
        for col in &columns {
            if let Some(&(r, _)) = col.last() {
                assert!(r < rows, "row index {r} out of range {rows}");
            }
        }
        SparseMatrix { rows, field, columns }
    }

    pub fn from_dense(field: Field, dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        Self::from_triplets(
            rows,
            cols,
            field,
            dense
                .iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, K::from_i64(v, field)))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn column(&self, c: usize) -> &[(usize, K)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVec<K>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> K {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(i) => self.columns[c][i].1.clone(),
            Err(_) => K::zero(self.field),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t: Vec<SparseVec<K>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                t[*r].push((c, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols(), field: self.field, columns: t }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch in product");
        let columns = rhs.columns.iter().map(|col| self.apply(col)).collect();
        SparseMatrix { rows: self.rows, field: self.field, columns }
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &[(usize, K)]) -> SparseVec<K> {
        let mut acc = Vec::new();
        for (c, a) in v {
            for (r, b) in &self.columns[*c] {
                acc.push((*r, a.mul(b)));
            }
        }
        normalize(acc)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols()), (rhs.rows, rhs.cols()));
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| normalize(a.iter().chain(b.iter()).cloned().collect()))
            .collect();
        SparseMatrix { rows: self.rows, field: self.field, columns }
    }

    pub fn scale(&self, s: &K) -> Self {
        let columns = self.columns.iter().map(|c| normalize(c.iter().map(|(r, v)| (*r, v.mul(s))).collect())).collect();
        SparseMatrix { rows: self.rows, field: self.field, columns }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&K::from_i64(-1, self.field)))
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows);
        let mut columns = self.columns.clone();
        columns.extend(rhs.columns.iter().cloned());
        SparseMatrix { rows: self.rows, field: self.field, columns }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            pos[r] = i;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                normalize(
                    self.columns[c]
                        .iter()
                        .filter(|(r, _)| pos[*r] != usize::MAX)
                        .map(|(r, v)| (pos[*r], v.clone()))
                        .collect(),
                )
            })
            .collect();
        SparseMatrix { rows: rows.len(), field: self.field, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<K>> {
        let mut d = vec![vec![K::zero(self.field); self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                d[*r][c] = v.clone();
            }
        }
        d
    }
}

/// Sorts by index, sums duplicates, drops zeros.
pub fn normalize<K: Scalar>(mut v: Vec<(usize, K)>) -> SparseVec<K> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<K> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.add(&x),
            _ => out.push((i, x)),
        }
        if let Some((_, y)) = out.last() {
            if y.is_zero() {
                out.pop();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Modp;

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m: SparseMatrix<Modp> = SparseMatrix::from_triplets(
            2,
            2,
            Field::F2,
            [(0, 0, Modp::new(1, 2)), (0, 0, Modp::new(1, 2)), (1, 1, Modp::new(1, 2))],
        );
        assert_eq!(m.nnz(), 1);
        assert!(m.get(0, 0).is_zero());
    }

    #[test]
    fn product_against_dense() {
        let f = Field::Fp(5);
        let a: SparseMatrix<Modp> = SparseMatrix::from_dense(f, &[vec![1, 2], vec![3, 4]]);
        let b: SparseMatrix<Modp> = SparseMatrix::from_dense(f, &[vec![0, 1], vec![1, 0]]);
        let p = a.mul(&b);
        let want: SparseMatrix<Modp> = SparseMatrix::from_dense(f, &[vec![2, 1], vec![4, 3]]);
        assert_eq!(p, want);
        assert_eq!(p.transpose().transpose(), p);
    }
}
