//! Gauss-Jordan reduction: rank, kernel basis and image basis.
//!
//! Over F2 rows are bit-packed into `u64` words and eliminated with XOR.

use crate::algebra::field::{Field, Scalar};
use crate::algebra::matrix::{normalize, SparseMatrix, SparseVec};

/// Result of reducing a matrix `m` with `cols` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction<K> {
    pub rank: usize,
    /// Basis of the null space, as sparse vectors of length `cols`.
    pub kernel: Vec<SparseVec<K>>,
    /// Pivot columns; the corresponding columns of `m` are a basis of its image.
    pub image: Vec<usize>,
}

/// Reduces `m` to reduced row echelon form and reads off rank, kernel and image.
pub fn row_reduce<K: Scalar>(m: &SparseMatrix<K>) -> RowReduction<K> {
    if m.field().is_f2() {
        return BitMatrix::from_sparse(m).row_reduce();
    }
    generic_reduce(m)
}

/// Rank only.
pub fn rank<K: Scalar>(m: &SparseMatrix<K>) -> usize {
    if m.field().is_f2() {
        return BitMatrix::from_sparse(m).rank();
    }
    generic_reduce(m).rank
}

fn generic_reduce<K: Scalar>(m: &SparseMatrix<K>) -> RowReduction<K> {
    let field = m.field();
    let cols = m.cols();
    let mut rows: Vec<SparseVec<K>> = m.transpose().columns().to_vec();
    // Rows still available as pivots.
    let mut free_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (column, row)
    for c in 0..cols {
        // Sparsest available row with a nonzero in column c.
        let mut best: Option<(usize, usize)> = None; // (len, position in free_rows)
        for (pos, &r) in free_rows.iter().enumerate() {
            if rows[r].first().map(|e| e.0) == Some(c) {
                let len = rows[r].len();
                if best.is_none_or(|(l, _)| len < l) {
                    best = Some((len, pos));
                }
            }
        }
        let Some((_, pos)) = best else { continue };
        let pr = free_rows.swap_remove(pos);
        let inv = rows[pr][0].1.inv();
        let prow: SparseVec<K> = rows[pr].iter().map(|(j, v)| (*j, v.mul(&inv))).collect();
        for r in 0..rows.len() {
            if r == pr {
                continue;
            }
            if let Ok(i) = rows[r].binary_search_by_key(&c, |e| e.0) {
                let f = rows[r][i].1.neg();
                rows[r] = axpy(&rows[r], &f, &prow);
            }
        }
        rows[pr] = prow;
        pivots.push((c, pr));
        free_rows.retain(|&r| !rows[r].is_empty());
    }
    let mut is_pivot = vec![false; cols];
    for &(c, _) in &pivots {
        is_pivot[c] = true;
    }
    let kernel = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v: SparseVec<K> = vec![(f, K::one(field))];
            for &(c, r) in &pivots {
                if let Ok(i) = rows[r].binary_search_by_key(&f, |e| e.0) {
                    v.push((c, rows[r][i].1.neg()));
                }
            }
            normalize(v)
        })
        .collect();
    RowReduction { rank: pivots.len(), kernel, image: pivots.iter().map(|p| p.0).collect() }
}

/// `a + f·b` on sparse vectors.
pub fn axpy<K: Scalar>(a: &[(usize, K)], f: &K, b: &[(usize, K)]) -> SparseVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ai = a.get(i).map_or(usize::MAX, |e| e.0);
        let bj = b.get(j).map_or(usize::MAX, |e| e.0);
        if ai < bj {
            out.push(a[i].clone());
            i += 1;
        } else if bj < ai {
            out.push((bj, f.mul(&b[j].1)));
            j += 1;
        } else {
            let s = a[i].1.add(&f.mul(&b[j].1));
            if !s.is_zero() {
                out.push((ai, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Dense bit-packed matrix over F2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { cols, words, rows: vec![vec![0; words]; rows] }
    }

    pub fn from_sparse<K: Scalar>(m: &SparseMatrix<K>) -> Self {
        let mut b = BitMatrix::new(m.rows(), m.cols());
        for (c, col) in m.columns().iter().enumerate() {
            for (r, _) in col {
                b.set(*r, c, true);
            }
        }
        b
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.rows[r][c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            for row in tail.iter_mut() {
                if row[w] & bit != 0 {
                    for (x, y) in row[w..].iter_mut().zip(&prow[w..]) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Full reduction with kernel and image, values returned in `K`.
    pub fn row_reduce<K: Scalar>(&self) -> RowReduction<K> {
        let mut rows = self.rows.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let prow = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    for (x, y) in row[w..].iter_mut().zip(&prow[w..]) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        let one = K::one(Field::F2);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let kernel = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![(f, one.clone())];
                for (i, &c) in pivots.iter().enumerate() {
                    if rows[i][f / 64] >> (f % 64) & 1 == 1 {
                        v.push((c, one.clone()));
                    }
                }
                normalize(v)
            })
            .collect();
        RowReduction { rank, kernel, image: pivots }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Modp;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn dense_f2(d: &[Vec<i64>]) -> SparseMatrix<Modp> {
        SparseMatrix::from_dense(Field::F2, d)
    }

    #[test]
    fn identity_has_full_rank_and_trivial_kernel() {
        let r = row_reduce(&SparseMatrix::<Modp>::identity(3, Field::F2));
        assert_eq!(r.rank, 3);
        assert!(r.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let r = row_reduce(&SparseMatrix::<Modp>::zero(2, 5, Field::F2));
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel.len(), 5);
    }

    #[test]
    fn repeated_row_has_rank_one() {
        assert_eq!(rank(&dense_f2(&[vec![1, 1], vec![1, 1]])), 1);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2: singular mod 2, invertible elsewhere.
        let d = [vec![1, 1], vec![1, -1]];
        assert_eq!(rank(&dense_f2(&d)), 1);
        assert_eq!(rank(&SparseMatrix::<Modp>::from_dense(Field::Fp(3), &d)), 2);
        assert_eq!(rank(&SparseMatrix::<BigRational>::from_dense(Field::Q, &d)), 2);
    }

    fn check_reduction<K: Scalar>(m: &SparseMatrix<K>) {
        let r = row_reduce(m);
        assert_eq!(r.rank + r.kernel.len(), m.cols());
        for v in &r.kernel {
            assert!(m.apply(v).is_empty());
        }
        let img = m.select(&(0..m.rows()).collect::<Vec<_>>(), &r.image);
        assert_eq!(rank(&img), r.rank);
    }

    proptest! {
        #[test]
        fn rank_nullity_and_exact_bases(
            entries in proptest::collection::vec(-2i64..3, 0..48),
            rows in 1usize..7,
        ) {
            let cols = (entries.len() / rows).max(1);
            let dense: Vec<Vec<i64>> = (0..rows)
                .map(|r| (0..cols).map(|c| *entries.get(r * cols + c).unwrap_or(&0)).collect())
                .collect();
            check_reduction(&dense_f2(&dense));
            check_reduction(&SparseMatrix::<Modp>::from_dense(Field::Fp(3), &dense));
            check_reduction(&SparseMatrix::<BigRational>::from_dense(Field::Q, &dense));
            // Bit-packed and generic paths agree on F2.
            prop_assert_eq!(generic_reduce(&dense_f2(&dense)).rank, rank(&dense_f2(&dense)));
        }
    }
}
