//! Grid skein triples and the map `g = P + T` between two resolutions.
//!
//! A triple lives on one grid. The three diagrams agree outside two
//! adjacent columns `L = i - 1` and `R = i`, which hold four markings in
//! four distinct rows. Going up cyclically from `m1` the rows are
//! `m1 < s1 < s2 < m2`. The diagrams differ in how these four markings are
//! split between the columns:
//!
//! | diagram | column `L` | column `R` |
//! |---------|------------|------------|
//! | `G0`    | `s2, m2`   | `m1, s1`   |
//! | `G1`    | `m1, s2`   | `s1, m2`   |
//! | `G∞`    | `m1, m2`   | `s1, s2`   |
//!
//! So `m1` and `m2` move and `s1`, `s2` stay put between `G0` and `G1`.
//! X/O labels of `G1` and `G∞` are recomputed when the labels of `G0` do not
//! fit, which happens exactly when the saddle from `G0` to `G1` is
//! nonorientable.

pub mod maps;
pub mod nine;

use serde::Serialize;
use thiserror::Error;

use crate::grid::{GridDiagram, GridError};

pub use maps::{equivariance_check, half_rank_check, half_rank_report, EquivarianceReport, HalfRankReport, SkeinMaps};
pub use nine::{nine_diagram_ranks, NineFamily, NineReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("invalid skein block: {0}")]
    InvalidBlock(String),
    #[error("skein map is not a chain map: {0}")]
    ChainMap(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A physical marking: row, column and whether it carries an X label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Marking {
    pub row: usize,
    pub col: usize,
    pub is_x: bool,
}

/// Three resolutions on one grid.
#[derive(Clone, Debug, Serialize)]
pub struct SkeinTriple {
    pub g_inf: GridDiagram,
    pub g0: GridDiagram,
    pub g1: GridDiagram,
    /// Column `R`; column `L` is the one to its left.
    pub col: usize,
    /// Rows of `m1, s1, s2, m2`.
    pub rows: [usize; 4],
    /// Whether `G1` keeps the labels of `G0`.
    pub orientable: bool,
}

impl SkeinTriple {
    pub fn n(&self) -> usize {
        self.g0.n()
    }

    pub fn left(&self) -> usize {
        (self.col + self.n() - 1) % self.n()
    }

    /// Grids in the order `G∞, G0, G1`.
    pub fn grids(&self) -> [&GridDiagram; 3] {
        [&self.g_inf, &self.g0, &self.g1]
    }

    /// Component counts of `G∞, G0, G1`.
    pub fn components(&self) -> [usize; 3] {
        self.grids().map(|g| g.n_components())
    }

    /// Writhes of `G∞, G0, G1`.
    pub fn writhes(&self) -> [i64; 3] {
        self.grids().map(|g| g.writhe())
    }

    /// Markings of `G0` as `2r` (the X of row `r`) and `2r + 1` (its O).
    pub fn markings0(&self) -> Vec<Marking> {
        markings(&self.g0)
    }

    /// Index into [`Self::markings0`] of the window markings `m1, s1, s2, m2`.
    pub fn window_indices(&self) -> [usize; 4] {
        let r = self.rows;
        let (i, l) = (self.col, self.left());
        let pick = |row: usize, col: usize| {
            if self.g0.x()[row] == col {
                2 * row
            } else {
                2 * row + 1
            }
        };
        [pick(r[0], i), pick(r[1], i), pick(r[2], l), pick(r[3], l)]
    }

    /// Column of a `G0` marking after the move to `G1`.
    pub fn col_in_g1(&self, k: usize) -> usize {
        let w = self.window_indices();
        if k == w[0] {
            self.left()
        } else if k == w[3] {
            self.col
        } else {
            markings(&self.g0)[k].col
        }
    }
}

/// All markings of a grid, X of row `r` at index `2r`, O at `2r + 1`.
pub fn markings(g: &GridDiagram) -> Vec<Marking> {
    (0..g.n())
        .flat_map(|r| [Marking { row: r, col: g.x()[r], is_x: true }, Marking { row: r, col: g.o()[r], is_x: false }])
        .collect()
}

/// Builds the triple whose `G0` is `g0`, using columns `col - 1` and `col`.
pub fn build_skein_triple(g0: &GridDiagram, col: usize) -> Result<SkeinTriple, SkeinError> {
    let n = g0.n();
    if n < 4 {
        return Err(SkeinError::InvalidBlock(format!("a skein block needs four distinct rows, grid has size {n}")));
    }
    if col >= n {
        return Err(SkeinError::InvalidBlock(format!("column {col} out of range")));
    }
    let left = (col + n - 1) % n;
    let ms = markings(g0);
    let in_col = |c: usize| -> Vec<usize> { (0..2 * n).filter(|&k| ms[k].col == c).collect() };
    let (rk, lk) = (in_col(col), in_col(left));
    let mut rows: Vec<usize> = rk.iter().chain(&lk).map(|&k| ms[k].row).collect();
    rows.sort_unstable();
    rows.dedup();
    if rows.len() != 4 {
        return Err(SkeinError::InvalidBlock("the window markings must lie in four distinct rows".into()));
    }
    // The two right-column rows must be cyclically adjacent among the four.
    let pos = |r: usize| rows.iter().position(|&q| q == r).expect("row present");
    let (pa, pb) = (pos(ms[rk[0]].row), pos(ms[rk[1]].row));
    let (m1, s1) = if (pa + 1) % 4 == pb {
        (rk[0], rk[1])
    } else if (pb + 1) % 4 == pa {
        (rk[1], rk[0])
    } else {
        return Err(SkeinError::InvalidBlock("right-column markings interleave with the left-column ones".into()));
    };
    let start = pos(ms[m1].row);
    let s2_row = rows[(start + 2) % 4];
    let m2_row = rows[(start + 3) % 4];
    let s2 = lk.iter().copied().find(|&k| ms[k].row == s2_row).expect("left marking");
    let m2 = lk.iter().copied().find(|&k| ms[k].row == m2_row).expect("left marking");

    let mut c1: Vec<usize> = ms.iter().map(|m| m.col).collect();
    c1[m1] = left;
    c1[m2] = col;
    let mut cinf: Vec<usize> = ms.iter().map(|m| m.col).collect();
    cinf[m1] = left;
    cinf[s2] = col;

    let labels: Vec<bool> = ms.iter().map(|m| m.is_x).collect();
    let orientable = labels[m1] != labels[s2];
    let g1 = relabel(n, &c1, &labels)?;
    let g_inf = relabel(n, &cinf, &labels)?;
    Ok(SkeinTriple { g_inf, g0: g0.clone(), g1, col, rows: [ms[m1].row, ms[s1].row, s2_row, m2_row], orientable })
}

/// Labels the markings `2r, 2r + 1` of every row (placed in columns `cols`)
/// as X or O so that every column has one of each. Each component gets the
/// orientation agreeing with `reference` on most markings.
fn relabel(n: usize, cols: &[usize], reference: &[bool]) -> Result<GridDiagram, SkeinError> {
    let mut by_col = vec![Vec::new(); n];
    for (k, &c) in cols.iter().enumerate() {
        by_col[c].push(k);
    }
    if by_col.iter().any(|v| v.len() != 2) {
        return Err(SkeinError::InvalidBlock("every column needs two markings".into()));
    }
    let mut label: Vec<Option<bool>> = vec![None; 2 * n];
    for start in 0..2 * n {
        if label[start].is_some() {
            continue;
        }
        // Walk the component: column partner, then row partner.
        let mut cycle = Vec::new();
        let mut k = start;
        loop {
            cycle.push(k);
            let c = &by_col[cols[k]];
            let p = if c[0] == k { c[1] } else { c[0] };
            cycle.push(p);
            let q = p ^ 1;
            if q == start {
                break;
            }
            k = q;
        }
        let agree = cycle.iter().enumerate().filter(|(t, &k)| (t % 2 == 0) == reference[k]).count();
        let flip = 2 * agree < cycle.len();
        for (t, &k) in cycle.iter().enumerate() {
            label[k] = Some((t % 2 == 0) != flip);
        }
    }
    let mut x = vec![0; n];
    let mut o = vec![0; n];
    for r in 0..n {
        let (a, b) = (2 * r, 2 * r + 1);
        if label[a] == label[b] {
            return Err(SkeinError::InvalidBlock(format!("row {r} cannot be labelled")));
        }
        let (xk, ok) = if label[a] == Some(true) { (a, b) } else { (b, a) };
        x[r] = cols[xk];
        o[r] = cols[ok];
    }
    Ok(GridDiagram::new(x, o)?)
}

/// Block union with `l1` bottom right and `l2` top left, each translated so
/// that its leftmost column has O below X and its rightmost column X below
/// O. Returns the grid and the first column of `l1`. Both seams, the one
/// between the blocks and the one across the wrap, then carry valid
/// windows with the labels O, X, X, O from the bottom.
pub fn block_union(l1: &GridDiagram, l2: &GridDiagram) -> Result<(GridDiagram, usize), SkeinError> {
    let (n1, n2) = (l1.n(), l2.n());
    if n1 < 2 || n2 < 2 {
        return Err(SkeinError::InvalidBlock("blocks need grids of size at least 2".into()));
    }
    let align = |g: &GridDiagram| -> GridDiagram {
        let n = g.n();
        let xi = crate::grid::inverse(g.x());
        let oi = crate::grid::inverse(g.o());
        let o_below = |c: usize| oi[c] < xi[c];
        // Columns of both kinds exist, so the kind changes somewhere.
        let c = (0..n)
            .find(|&c| o_below(c) && !o_below((c + n - 1) % n))
            .expect("both column kinds occur on a grid of size at least 2");
        g.translate(0, (n - c) % n)
    };
    let (a, b) = (align(l1), align(l2));
    let n = n1 + n2;
    let mut x = vec![0; n];
    let mut o = vec![0; n];
    for r in 0..n1 {
        x[r] = a.x()[r] + n2;
        o[r] = a.o()[r] + n2;
    }
    for r in 0..n2 {
        x[n1 + r] = b.x()[r];
        o[n1 + r] = b.o()[r];
    }
    Ok((GridDiagram::new(x, o)?, n2))
}

/// The triple merging `l1` and `l2`: `G0 = l1 ⊔ l2`, `G1` their connected
/// sum and `G∞` the sum with `l2` reversed.
pub fn merge_triple(l1: &GridDiagram, l2: &GridDiagram) -> Result<SkeinTriple, SkeinError> {
    let (g0, col) = block_union(l1, l2)?;
    build_skein_triple(&g0, col)
}

/// Every window column of `g0` that carries a valid skein block.
pub fn valid_windows(g0: &GridDiagram) -> Vec<usize> {
    (0..g0.n()).filter(|&c| build_skein_triple(g0, c).is_ok()).collect()
}
