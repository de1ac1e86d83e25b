//! Pentagon and triangle counts, the induced map `g_*`, and the checks built
//! on it.
//!
//! The two curves replacing the vertical circle between columns `L` and `R`
//! cross at `a`, just below `m1` (in row `m1 - 1`), and at `b`, between `s2`
//! and `m2`. Between them the thin strip holding `m1` lies right of the
//! `G0` curve; the strip holding `m2` lies left of it. States of `G0` and
//! `G1` are both permutations and share indices.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{markings, SkeinError, SkeinTriple};
use crate::algebra::{induced_matrix_of, rank, BigradedDims, Field, Grading, Modp, Scalar, SparseMatrix, SparseVec};
use crate::basepoints::{homology_operators, HomologyOperators};
use crate::grid::complex::cdist;
use crate::grid::{GridComplex, GridDiagram};

/// `2δ = 2M - 2A` of a grading `(2M, 2A)`.
pub fn delta2(g: Grading) -> i32 {
    g.0 - g.1
}

/// Chain-level data of a triple on the `G0 → G1` edge.
pub struct SkeinMaps {
    pub triple: SkeinTriple,
    pub c0: Arc<GridComplex>,
    pub c1: Arc<GridComplex>,
    pub pentagons: SparseMatrix<Modp>,
    pub triangles: SparseMatrix<Modp>,
    pub g: SparseMatrix<Modp>,
    /// Shift of `2δ` under `g`, when `g` is nonzero.
    pub delta_shift: Option<i32>,
}

impl SkeinMaps {
    /// Builds both complexes and the maps, and checks that `P`, `T` and
    /// `g` commute with the differentials.
    pub fn new(t: &SkeinTriple, max_n: usize) -> Result<Self, SkeinError> {
        let c0 = Arc::new(GridComplex::new(&t.g0, max_n)?);
        let c1 = Arc::new(GridComplex::new(&t.g1, max_n)?);
        Self::with_complexes(t, c0, c1)
    }

    /// As [`Self::new`] with prebuilt complexes for `G0` and `G1`.
    pub fn with_complexes(t: &SkeinTriple, c0: Arc<GridComplex>, c1: Arc<GridComplex>) -> Result<Self, SkeinError> {
        if c0.grid() != &t.g0 || c1.grid() != &t.g1 {
            return Err(SkeinError::InvalidBlock("complexes do not match the triple".into()));
        }
        let pentagons = pentagon_matrix(t, &c0);
        let triangles = triangle_matrix(t, &c0);
        let g = pentagons.add(&triangles);
        let d0 = c0.complex().differential();
        let d1 = c1.complex().differential();
        for (name, m) in [("P", &pentagons), ("T", &triangles)] {
            if !d1.mul(m).add(&m.mul(d0)).is_zero() {
                return Err(SkeinError::ChainMap(format!("{name} does not commute with the differentials")));
            }
        }
        let delta_shift = delta_shift(&g, c0.gradings(), c1.gradings())?;
        Ok(SkeinMaps { triple: t.clone(), c0, c1, pentagons, triangles, g, delta_shift })
    }

    /// `g_*` on homology bases.
    pub fn induced(&self) -> SparseMatrix<Modp> {
        induced_matrix_of(&self.g, self.c0.gradings(), self.c1.gradings(), self.c0.model(), self.c1.model())
    }
}

fn delta_shift(m: &SparseMatrix<Modp>, src: &[Grading], tgt: &[Grading]) -> Result<Option<i32>, SkeinError> {
    let mut shift = None;
    for (c, col) in m.columns().iter().enumerate() {
        for (r, _) in col {
            let s = delta2(tgt[*r]) - delta2(src[c]);
            match shift {
                None => shift = Some(s),
                Some(v) if v != s => {
                    return Err(SkeinError::ChainMap(format!("g is not δ-homogeneous ({v} vs {s})")));
                }
                _ => {}
            }
        }
    }
    Ok(shift)
}

/// Row of `x` whose point lies on the moving curve.
fn row_on_curve(x: &[usize], col: usize) -> usize {
    x.iter().position(|&c| c == col).expect("state is a permutation")
}

/// Empty pentagons with a corner at `a` avoiding every marking, from `G0`
/// states to `G1` states.
pub fn pentagon_matrix(t: &SkeinTriple, c0: &GridComplex) -> SparseMatrix<Modp> {
    let n = t.n();
    let i = t.col;
    let [m1, _, _, m2] = t.window_indices();
    let ms = markings(&t.g0);
    let fixed: Vec<(usize, usize)> =
        (0..2 * n).filter(|&k| k != m1 && k != m2).map(|k| (ms[k].row, ms[k].col)).collect();
    let ra = (ms[m1].row + n - 1) % n;
    let rho2 = ms[m2].row;
    let one = Modp::one(Field::F2);
    let columns: Vec<SparseVec<Modp>> = (0..c0.len())
        .into_par_iter()
        .map(|s| {
            let x = c0.state(s);
            let s0 = row_on_curve(&x, i);
            let mut col = Vec::new();
            let mut y = x.clone();
            for h in 1..n {
                // Right pentagon: bottom edge on row s0, top on row `top`.
                if cdist(s0, ra, n) < h {
                    let top = (s0 + h) % n;
                    let j = x[top];
                    let w = cdist(i, j, n);
                    let ok = (1..h).all(|k| {
                        let d = cdist(i, x[(s0 + k) % n], n);
                        d == 0 || d >= w
                    }) && !fixed.iter().any(|&(r, c)| cdist(s0, r, n) < h && cdist(i, c, n) < w)
                        && !(cdist(s0, ra, n) < cdist(s0, rho2, n) && cdist(s0, rho2, n) < h);
                    if ok {
                        y[s0] = j;
                        y[top] = i;
                        col.push((c0.index_of(&y), one));
                        y[s0] = i;
                        y[top] = j;
                    }
                }
                // Left pentagon: top edge on row s0, bottom on row `bot`.
                let bot = (s0 + n - h) % n;
                if cdist(bot, ra, n) < h {
                    let j = x[bot];
                    let w = cdist(j, i, n);
                    let ok = (1..h).all(|k| {
                        let d = cdist(j, x[(bot + k) % n], n);
                        d == 0 || d >= w
                    }) && !fixed.iter().any(|&(r, c)| cdist(bot, r, n) < h && cdist(j, c, n) < w)
                        && !(cdist(bot, ra, n) < cdist(bot, rho2, n) && cdist(bot, rho2, n) < h);
                    if ok {
                        y[bot] = i;
                        y[s0] = j;
                        col.push((c0.index_of(&y), one));
                        y[bot] = j;
                        y[s0] = i;
                    }
                }
            }
            normalize_f2(col)
        })
        .collect();
    SparseMatrix::from_columns(c0.len(), Field::F2, columns)
}

/// Empty triangles with a corner at `b`: the state stays the same and its
/// point on the curve sits in rows `m1 + 1 ..= m2`.
pub fn triangle_matrix(t: &SkeinTriple, c0: &GridComplex) -> SparseMatrix<Modp> {
    let n = t.n();
    let [r1, _, _, r2] = t.rows;
    let span = cdist(r1, r2, n);
    let one = Modp::one(Field::F2);
    let columns: Vec<SparseVec<Modp>> = (0..c0.len())
        .into_par_iter()
        .map(|s| {
            let x = c0.state(s);
            let d = cdist(r1, row_on_curve(&x, t.col), n);
            if d >= 1 && d <= span {
                vec![(s, one)]
            } else {
                Vec::new()
            }
        })
        .collect();
    SparseMatrix::from_columns(c0.len(), Field::F2, columns)
}

fn normalize_f2(mut v: Vec<(usize, Modp)>) -> SparseVec<Modp> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, Modp)> = Vec::with_capacity(v.len());
    for (r, e) in v {
        match out.last() {
            Some(&(q, _)) if q == r => {
                out.pop();
            }
            _ => out.push((r, e)),
        }
    }
    out
}

/// Rank of the columns of `m` whose source `2δ` equals each value.
pub fn ranks_by_delta(m: &SparseMatrix<Modp>, src: &[Grading]) -> BTreeMap<i32, usize> {
    let mut groups: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (c, g) in src.iter().enumerate() {
        groups.entry(delta2(*g)).or_default().push(c);
    }
    let rows: Vec<usize> = (0..m.rows()).collect();
    groups.into_iter().map(|(d, cols)| (d, rank(&m.select(&rows, &cols)))).collect()
}

/// Dimensions by `2δ`.
pub fn delta_dims(d: &BigradedDims) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (g, k) in d.iter() {
        *out.entry(delta2(g)).or_insert(0) += k;
    }
    out
}

/// One `δ` line of the half-rank check, with `2δ` measured on the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaLine {
    pub delta2: i32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfRankReport {
    pub dims: [usize; 3],
    pub total_rank: usize,
    pub delta_shift: Option<i32>,
    pub lines: Vec<DeltaLine>,
    /// `dim G0 + dim G1 - dim G∞ = 2 rank g_*`.
    pub exact_total: bool,
    /// `dim_δ G0 = ½ (dim_{δ+1} G1 + dim_δ G1)`, with `δ` read on the
    /// target through the shift of `g`: the counting identity forced by
    /// exactness and the half-rank property.
    pub bookkeeping: bool,
}

impl HalfRankReport {
    pub fn half_rank(&self) -> bool {
        self.lines.iter().all(|l| 2 * l.rank == l.target_dim)
    }

    pub fn ok(&self) -> bool {
        self.half_rank() && self.exact_total && self.bookkeeping
    }
}

/// Per-`δ` rank of `g_*` against the target dimension, plus the exactness
/// bookkeeping of the triangle.
pub fn half_rank_report(maps: &SkeinMaps, max_n: usize) -> Result<HalfRankReport, SkeinError> {
    let gi = GridComplex::new(&maps.triple.g_inf, max_n)?;
    let h0 = maps.c0.homology();
    let h1 = maps.c1.homology();
    let hi = gi.homology();
    let induced = maps.induced();
    let total_rank = rank(&induced);
    let shift = maps.delta_shift.unwrap_or(0);
    let by_src = ranks_by_delta(&induced, maps.c0.model().basis_gradings());
    let (d0, d1) = (delta_dims(&h0), delta_dims(&h1));
    let mut keys: Vec<i32> = d1.keys().copied().collect();
    keys.extend(d0.keys().map(|d| d + shift));
    keys.sort_unstable();
    keys.dedup();
    let lines: Vec<DeltaLine> = keys
        .iter()
        .map(|&d| DeltaLine {
            delta2: d,
            source_dim: d0.get(&(d - shift)).copied().unwrap_or(0),
            target_dim: d1.get(&d).copied().unwrap_or(0),
            rank: by_src.get(&(d - shift)).copied().unwrap_or(0),
        })
        .collect();
    let exact_total = h0.total() + h1.total() == hi.total() + 2 * total_rank;
    let bookkeeping = lines.iter().all(|l| {
        let above = d1.get(&(l.delta2 + 2)).copied().unwrap_or(0);
        2 * l.source_dim == l.target_dim + above
    });
    Ok(HalfRankReport {
        dims: [hi.total(), h0.total(), h1.total()],
        total_rank,
        delta_shift: maps.delta_shift,
        lines,
        exact_total,
        bookkeeping,
    })
}

/// Half-rank check on the merge triple of `l1` and `l2`.
pub fn half_rank_check(l1: &GridDiagram, l2: &GridDiagram, max_n: usize) -> Result<HalfRankReport, SkeinError> {
    let t = super::merge_triple(l1, l2)?;
    let maps = SkeinMaps::new(&t, max_n)?;
    half_rank_report(&maps, max_n)
}

/// One equivariance identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceLine {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub orientable: bool,
    pub lines: Vec<EquivarianceLine>,
}

impl EquivarianceReport {
    pub fn ok(&self) -> bool {
        self.lines.iter().all(|l| l.holds)
    }
}

/// Operator of the physical marking at `row`, `col` of `grid`.
fn physical_op<'a>(ops: &'a HomologyOperators, grid: &GridDiagram, row: usize, col: usize) -> &'a SparseMatrix<Modp> {
    if grid.x()[row] == col {
        &ops.z[row]
    } else {
        &ops.w[row]
    }
}

/// Commutators of `g_*` with the basepoint maps. Markings are identified
/// by position, so on a nonorientable saddle a `z` map on one side may be a
/// `w` map on the other.
pub fn equivariance_check(maps: &SkeinMaps) -> Result<EquivarianceReport, SkeinError> {
    let t = &maps.triple;
    let ops0 = homology_operators(&maps.c0)?;
    let ops1 = homology_operators(&maps.c1)?;
    let g = maps.induced();
    let ms = markings(&t.g0);
    let op0 = |k: usize| physical_op(&ops0, &t.g0, ms[k].row, ms[k].col).clone();
    let op1 = |k: usize| physical_op(&ops1, &t.g1, ms[k].row, t.col_in_g1(k)).clone();
    let comm = |k: &[usize]| -> SparseMatrix<Modp> {
        let a0 = k.iter().map(|&q| op0(q)).reduce(|a, b| a.add(&b)).expect("nonempty");
        let a1 = k.iter().map(|&q| op1(q)).reduce(|a, b| a.add(&b)).expect("nonempty");
        g.mul(&a0).add(&a1.mul(&g))
    };
    let name = |k: usize| format!("{}{}", if ms[k].is_x { "z" } else { "w" }, ms[k].row);
    let w = t.window_indices();
    let mut lines = Vec::new();
    for k in 0..ms.len() {
        if w.contains(&k) {
            continue;
        }
        lines.push(EquivarianceLine { relation: format!("[g, {}] = 0", name(k)), holds: comm(&[k]).is_zero() });
    }
    for pair in [[w[0], w[3]], [w[1], w[2]]] {
        lines.push(EquivarianceLine {
            relation: format!("[g, {} + {}] = 0", name(pair[0]), name(pair[1])),
            holds: comm(&pair).is_zero(),
        });
    }
    for s in [w[1], w[2]] {
        for m in [w[0], w[3]] {
            lines.push(EquivarianceLine {
                relation: format!("[g, {} + {}] = g", name(s), name(m)),
                holds: comm(&[s, m]).add(&g).is_zero(),
            });
        }
    }
    Ok(EquivarianceReport { orientable: t.orientable, lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::corpus::unknot_grid;
    use crate::skein::merge_triple;

    #[test]
    fn merge_of_unknots_is_a_chain_map() {
        let t = merge_triple(&unknot_grid(2), &unknot_grid(2)).unwrap();
        let m = SkeinMaps::new(&t, 9).unwrap();
        assert!(!m.g.is_zero());
        let r = half_rank_report(&m, 9).unwrap();
        assert!(r.ok(), "{r:?}");
    }
}
