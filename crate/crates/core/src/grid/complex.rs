//! Grid states, their gradings, empty rectangles and the tilde complex.
//!
//! States are permutations `x: row → column`, enumerated lexicographically
//! and indexed by their Lehmer rank. Gradings are stored in half units as
//! `(2M, 2A)`.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    BigradedDims, Field, GradedComplex, GradedMap, Grading, HomologyModel, Modp, Scalar, SparseMatrix, SparseVec,
};
use crate::grid::{GridDiagram, GridError};

/// Default largest grid size for which the tilde complex is built.
pub const DEFAULT_MAX_GRID: usize = 9;

/// A marking: the X or the O of a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MarkingId {
    X(usize),
    O(usize),
}

impl MarkingId {
    /// Dense code: X markings first, then O markings.
    pub fn code(self, n: usize) -> usize {
        match self {
            MarkingId::X(r) => r,
            MarkingId::O(r) => n + r,
        }
    }

    pub fn from_code(code: usize, n: usize) -> Self {
        if code < n {
            MarkingId::X(code)
        } else {
            MarkingId::O(code - n)
        }
    }

    pub fn row(self) -> usize {
        match self {
            MarkingId::X(r) | MarkingId::O(r) => r,
        }
    }
}

/// A rectangle on the torus from `x` to `y`: lower-left and upper-right
/// corners in `x`, the other two in `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rectangle {
    pub bottom: usize,
    pub top: usize,
    pub left: usize,
    pub right: usize,
    /// Markings inside, X first, by row.
    pub markings: Vec<MarkingId>,
    /// No point of `x` lies in the interior.
    pub empty: bool,
}

/// `(d - a) mod n`.
#[inline]
pub(crate) fn cdist(a: usize, d: usize, n: usize) -> usize {
    (d + n - a) % n
}

/// The two rectangles from `x` to `y` when the states differ in exactly two
/// rows, with their marking content and emptiness; nothing otherwise.
pub fn empty_rectangles(g: &GridDiagram, x: &[usize], y: &[usize]) -> Vec<Rectangle> {
    let n = g.n();
    let diff: Vec<usize> = (0..n).filter(|&r| x[r] != y[r]).collect();
    if diff.len() != 2 || x.len() != n || y.len() != n {
        return Vec::new();
    }
    let (p, q) = (diff[0], diff[1]);
    if y[p] != x[q] || y[q] != x[p] {
        return Vec::new();
    }
    [(p, q), (q, p)]
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (x[i], x[j]);
            let (h, w) = (cdist(i, j, n), cdist(a, b, n));
            let mut markings = Vec::new();
            for t in 0..h {
                let r = (i + t) % n;
                if cdist(a, g.x()[r], n) < w {
                    markings.push(MarkingId::X(r));
                }
            }
            for t in 0..h {
                let r = (i + t) % n;
                if cdist(a, g.o()[r], n) < w {
                    markings.push(MarkingId::O(r));
                }
            }
            let empty = (1..h).all(|t| {
                let d = cdist(a, x[(i + t) % n], n);
                d == 0 || d >= w
            });
            Rectangle { bottom: i, top: j, left: a, right: b, markings, empty }
        })
        .collect()
}

fn count_sw(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    let mut c = 0;
    for a in p {
        for b in q {
            if a.0 < b.0 && a.1 < b.1 {
                c += 1;
            }
        }
    }
    c
}

/// Maslov grading of `x` relative to a set of markings, points in doubled
/// coordinates.
fn maslov(xs: &[(i64, i64)], marks: &[(i64, i64)]) -> i64 {
    count_sw(xs, xs) - count_sw(xs, marks) - count_sw(marks, xs) + count_sw(marks, marks) + 1
}

/// `(2M, 2A)` of a state.
pub fn state_gradings(g: &GridDiagram, x: &[usize]) -> Grading {
    let n = g.n();
    let l = g.n_components() as i64;
    let pts: Vec<(i64, i64)> = (0..n).map(|r| (2 * x[r] as i64, 2 * r as i64)).collect();
    let os: Vec<(i64, i64)> = (0..n).map(|r| (2 * g.o()[r] as i64 + 1, 2 * r as i64 + 1)).collect();
    let xs: Vec<(i64, i64)> = (0..n).map(|r| (2 * g.x()[r] as i64 + 1, 2 * r as i64 + 1)).collect();
    let m_o = maslov(&pts, &os);
    let m_x = maslov(&pts, &xs);
    let a2 = m_o - m_x - (n as i64 - l);
    ((2 * m_o) as i32, a2 as i32)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation.
fn perm_rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&v| v < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The tilde grid complex over F2 with gradings `(2M, 2A)`.
pub struct GridComplex {
    grid: GridDiagram,
    states: Vec<u8>,
    complex: Arc<GradedComplex<Modp>>,
    model: OnceLock<HomologyModel<Modp>>,
}

/// Bidegree of an X marking map in half units.
pub const X_BIDEGREE: Grading = (-2, -2);
/// Bidegree of an O marking map in half units.
pub const O_BIDEGREE: Grading = (2, 2);

impl GridComplex {
    /// Builds the complex, refusing grids larger than `max_n`.
    pub fn new(grid: &GridDiagram, max_n: usize) -> Result<Self, GridError> {
        let n = grid.n();
        if n > max_n {
            return Err(GridError::TooLarge { n, limit: max_n });
        }
        let count = factorial(n);
        let mut states = Vec::with_capacity(count * n);
        let mut p: Vec<u8> = (0..n as u8).collect();
        loop {
            states.extend_from_slice(&p);
            if !next_permutation(&mut p) {
                break;
            }
        }
        let mut gc = GridComplex {
            grid: grid.clone(),
            states,
            complex: Arc::new(GradedComplex::zero_differential(Vec::new(), Field::F2, (-2, 0))),
            model: OnceLock::new(),
        };
        let gradings: Vec<Grading> = (0..count).into_par_iter().map(|s| state_gradings(grid, &gc.state(s))).collect();
        let d = gc.rectangle_matrix(|content| content.is_empty());
        gc.complex = Arc::new(GradedComplex::new(gradings, d, (-2, 0))?);
        Ok(gc)
    }

    pub fn grid(&self) -> &GridDiagram {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.states.len() / self.grid.n()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The `k`-th state in lexicographic order.
    pub fn state(&self, k: usize) -> Vec<usize> {
        let n = self.grid.n();
        self.states[k * n..(k + 1) * n].iter().map(|&c| c as usize).collect()
    }

    /// Index of a state.
    pub fn index_of(&self, x: &[usize]) -> usize {
        let p: Vec<u8> = x.iter().map(|&c| c as u8).collect();
        perm_rank(&p)
    }

    pub fn complex(&self) -> &Arc<GradedComplex<Modp>> {
        &self.complex
    }

    pub fn gradings(&self) -> &[Grading] {
        self.complex.gradings()
    }

    /// Homology model, computed once.
    pub fn model(&self) -> &HomologyModel<Modp> {
        self.model.get_or_init(|| HomologyModel::new(&self.complex))
    }

    pub fn homology(&self) -> BigradedDims {
        self.model().dims()
    }

    /// Matrix counting empty rectangles whose marking content (as codes)
    /// is accepted by `accept`.
    pub fn rectangle_matrix(&self, accept: impl Fn(&[usize]) -> bool + Sync) -> SparseMatrix<Modp> {
        let n = self.grid.n();
        let count = self.len();
        let one = Modp::one(Field::F2);
        let xs = self.grid.x();
        let os = self.grid.o();
        let columns: Vec<SparseVec<Modp>> = (0..count)
            .into_par_iter()
            .map(|s| {
                let x = &self.states[s * n..(s + 1) * n];
                let mut col = Vec::new();
                let mut content = Vec::with_capacity(4);
                let mut y = x.to_vec();
                for i in 0..n {
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        let (a, b) = (x[i] as usize, x[j] as usize);
                        let (h, w) = (cdist(i, j, n), cdist(a, b, n));
                        let empty = (1..h).all(|t| {
                            let d = cdist(a, x[(i + t) % n] as usize, n);
                            d == 0 || d >= w
                        });
                        if !empty {
                            continue;
                        }
                        content.clear();
                        for t in 0..h {
                            let r = (i + t) % n;
                            if cdist(a, xs[r], n) < w {
                                content.push(r);
                            }
                            if cdist(a, os[r], n) < w {
                                content.push(n + r);
                            }
                        }
                        content.sort_unstable();
                        if accept(&content) {
                            y[i] = b as u8;
                            y[j] = a as u8;
                            col.push((perm_rank(&y), one));
                            y[i] = a as u8;
                            y[j] = b as u8;
                        }
                    }
                }
                col
            })
            .collect();
        SparseMatrix::from_columns(count, Field::F2, columns)
    }

    /// Chain map counting empty rectangles that contain exactly the given
    /// marking and no other.
    pub fn marking_map(&self, m: MarkingId) -> Result<GradedMap<Modp>, GridError> {
        let n = self.grid.n();
        let code = m.code(n);
        let matrix = self.rectangle_matrix(|c| c.len() == 1 && c[0] == code);
        let deg = match m {
            MarkingId::X(_) => X_BIDEGREE,
            MarkingId::O(_) => O_BIDEGREE,
        };
        Ok(GradedMap::new(self.complex.clone(), self.complex.clone(), matrix, deg)?)
    }
}

impl GridComplex {
    /// Sum of the marking maps of `set`: empty rectangles containing exactly
    /// one marking, which lies in `set`. Not homogeneous when `set` mixes X
    /// and O markings.
    pub fn marking_sum_matrix(&self, set: &[MarkingId]) -> SparseMatrix<Modp> {
        let n = self.grid.n();
        let codes: Vec<usize> = set.iter().map(|m| m.code(n)).collect();
        self.rectangle_matrix(|c| c.len() == 1 && codes.contains(&c[0]))
    }
}

/// Tilde grid homology over F2 within the size limit.
pub fn gh_tilde(g: &GridDiagram, max_n: usize) -> Result<BigradedDims, GridError> {
    Ok(GridComplex::new(g, max_n)?.homology())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::corpus::{torus_grid, unknot_grid};
    use proptest::prelude::*;

    #[test]
    fn lehmer_rank_matches_enumeration() {
        let mut p: Vec<u8> = (0..5).collect();
        let mut k = 0;
        loop {
            assert_eq!(perm_rank(&p), k);
            k += 1;
            if !next_permutation(&mut p) {
                break;
            }
        }
        assert_eq!(k, 120);
    }

    #[test]
    fn rectangle_enumeration_edge_cases() {
        let g = unknot_grid(2);
        assert!(empty_rectangles(&g, &[0, 1], &[0, 1]).is_empty());
        let g3 = unknot_grid(3);
        assert!(empty_rectangles(&g3, &[0, 1, 2], &[1, 2, 0]).is_empty());
        for (x, y) in [([0, 1], [1, 0]), ([1, 0], [0, 1])] {
            let rs = empty_rectangles(&g, &x, &y);
            assert_eq!(rs.len(), 2);
            assert!(rs.iter().all(|r| r.empty && r.markings.len() == 1));
        }
    }

    #[test]
    fn one_by_one_unknot() {
        let h = gh_tilde(&unknot_grid(1), 9).unwrap();
        assert_eq!(h, BigradedDims::from_int_pairs(&[((0, 0), 1)]));
    }

    #[test]
    fn two_by_two_unknot_is_v() {
        let h = gh_tilde(&unknot_grid(2), 9).unwrap();
        assert_eq!(h, BigradedDims::from_int_pairs(&[((0, 0), 1), ((-1, -1), 1)]));
    }

    #[test]
    fn trefoil_total_rank() {
        let h = gh_tilde(&torus_grid(5, 2), 9).unwrap();
        assert_eq!(h.total(), 48);
    }

    #[test]
    fn size_guard() {
        assert_eq!(gh_tilde(&torus_grid(5, 2), 4).unwrap_err(), GridError::TooLarge { n: 5, limit: 4 });
    }

    #[test]
    fn marking_maps_are_chain_maps() {
        let c = GridComplex::new(&torus_grid(5, 2), 9).unwrap();
        for r in 0..5 {
            c.marking_map(MarkingId::X(r)).unwrap();
            c.marking_map(MarkingId::O(r)).unwrap();
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn differential_drops_maslov_by_one(seed in 0usize..120) {
            let g = torus_grid(5, 2);
            let c = GridComplex::new(&g, 9).unwrap();
            let gr = c.gradings();
            for (t, _) in c.complex().differential().column(seed) {
                prop_assert_eq!(gr[*t].0, gr[seed].0 - 2);
                prop_assert_eq!(gr[*t].1, gr[seed].1);
            }
        }
    }
}
