//! Grid diagrams on the torus and their tilde grid homology.
//!
//! Rows are indexed bottom to top and columns left to right. Row `r` holds
//! one X marking in column `x[r]` and one O marking in column `o[r]`, both
//! at cell centres. The link runs from X to O along columns and from O to X
//! along rows, with vertical strands passing over horizontal ones.
//! Basepoint pair `i` is the pair `(X_i, O_i)` of row `i`.

pub mod complex;
pub mod corpus;
pub mod hat;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::diagrams::{Crossing, DiagramError, PDCode};

pub use complex::{
    empty_rectangles, gh_tilde, state_gradings, GridComplex, MarkingId, Rectangle, DEFAULT_MAX_GRID, O_BIDEGREE,
    X_BIDEGREE,
};
pub use hat::{
    hat_delta_dims, hat_extract, hat_from_operators, v_dims, v_power, verify_orientation_shift, verify_stabilization,
    HatReport, OrientationShiftReport, StabilizationReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("invalid grid: {0}")]
    Invalid(String),
    #[error("cannot parse grid: {0}")]
    Parse(String),
    #[error("grid size {n} exceeds the limit of {limit} (raise it explicitly to proceed)")]
    TooLarge { n: usize, limit: usize },
    #[error("relation check failed: {0}")]
    Relation(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// An `n × n` grid diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GridJson", into = "GridJson")]
pub struct GridDiagram {
    x: Vec<usize>,
    o: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GridJson {
    n: usize,
    #[serde(rename = "X")]
    x: Vec<usize>,
    #[serde(rename = "O")]
    o: Vec<usize>,
}

impl TryFrom<GridJson> for GridDiagram {
    type Error = GridError;
    fn try_from(j: GridJson) -> Result<Self, GridError> {
        if j.n != j.x.len() {
            return Err(GridError::Invalid(format!("n = {} but X has {} entries", j.n, j.x.len())));
        }
        GridDiagram::new(j.x, j.o)
    }
}

impl From<GridDiagram> for GridJson {
    fn from(g: GridDiagram) -> Self {
        GridJson { n: g.n(), x: g.x, o: g.o }
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

pub(crate) fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Which of the four cells of the new 2×2 block receives the new O in
/// [`GridDiagram::stabilize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corner {
    SW,
    SE,
    NW,
    NE,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::SW, Corner::SE, Corner::NW, Corner::NE];

    /// `(dx, dy)` offsets inside the block.
    fn offsets(self) -> (usize, usize) {
        match self {
            Corner::SW => (0, 0),
            Corner::SE => (1, 0),
            Corner::NW => (0, 1),
            Corner::NE => (1, 1),
        }
    }
}

impl GridDiagram {
    /// Validates that `x` and `o` are permutations of one size and that no
    /// cell holds both markings (unless the grid is `1 × 1`).
    pub fn new(x: Vec<usize>, o: Vec<usize>) -> Result<Self, GridError> {
        let n = x.len();
        if n == 0 {
            return Err(GridError::Invalid("empty grid".into()));
        }
        if o.len() != n {
            return Err(GridError::Invalid(format!("X has {n} entries, O has {}", o.len())));
        }
        if !is_permutation(&x) || !is_permutation(&o) {
            return Err(GridError::Invalid("X and O must be permutations of 0..n".into()));
        }
        if n > 1 {
            if let Some(r) = (0..n).find(|&r| x[r] == o[r]) {
                return Err(GridError::Invalid(format!("row {r} has X and O in the same cell")));
            }
        }
        Ok(GridDiagram { x, o })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Column of the X marking in each row.
    pub fn x(&self) -> &[usize] {
        &self.x
    }

    /// Column of the O marking in each row.
    pub fn o(&self) -> &[usize] {
        &self.o
    }

    /// `ν(i)`: the basepoint pair reached from pair `i` by following the
    /// link from `X_i` down (or up) its column to the next O.
    pub fn successor(&self) -> Vec<usize> {
        let o_inv = inverse(&self.o);
        self.x.iter().map(|&c| o_inv[c]).collect()
    }

    /// Cycles of the successor function, each listed from its smallest row.
    pub fn components(&self) -> Vec<Vec<usize>> {
        cycles(&self.successor())
    }

    pub fn n_components(&self) -> usize {
        self.components().len()
    }

    /// Component index of every row.
    pub fn row_component(&self) -> Vec<usize> {
        let mut out = vec![0; self.n()];
        for (k, c) in self.components().iter().enumerate() {
            for &r in c {
                out[r] = k;
            }
        }
        out
    }

    /// Crossing sign at every intersection of a vertical and a horizontal
    /// segment, as `(row, column, sign)`.
    fn crossing_cells(&self) -> Vec<(usize, usize, i8)> {
        let n = self.n();
        let xi = inverse(&self.x);
        let oi = inverse(&self.o);
        let mut out = Vec::new();
        for r in 0..n {
            let (lo, hi) = (self.x[r].min(self.o[r]), self.x[r].max(self.o[r]));
            let sh: i8 = if self.x[r] > self.o[r] { 1 } else { -1 };
            for c in lo + 1..hi {
                let (b, t) = (xi[c].min(oi[c]), xi[c].max(oi[c]));
                if b < r && r < t {
                    let sv: i8 = if oi[c] > xi[c] { 1 } else { -1 };
                    out.push((r, c, -sv * sh));
                }
            }
        }
        out
    }

    /// Writhe of the planar diagram with vertical strands over.
    pub fn writhe(&self) -> i64 {
        self.crossing_cells().iter().map(|c| c.2 as i64).sum()
    }

    /// The planar diagram drawn by the grid, vertical strands over.
    pub fn to_pd(&self) -> Result<PDCode, GridError> {
        let cells = self.crossing_cells();
        let index: std::collections::HashMap<(usize, usize), usize> =
            cells.iter().enumerate().map(|(k, c)| ((c.0, c.1), k)).collect();
        let xi = inverse(&self.x);
        let oi = inverse(&self.o);
        let nu = self.successor();
        // Per crossing: (incoming, outgoing) edges of the horizontal and of
        // the vertical visit.
        let mut horiz = vec![(0usize, 0usize); cells.len()];
        let mut vert = vec![(0usize, 0usize); cells.len()];
        let mut next_edge = 0;
        let mut free_loops = 0;
        for comp in self.components() {
            // Visits along the component: (crossing, is_vertical).
            let mut visits: Vec<(usize, bool)> = Vec::new();
            let mut r = comp[0];
            loop {
                let (a, b) = (self.o[r], self.x[r]);
                let cols: Vec<usize> = if a < b { (a + 1..b).collect() } else { (b + 1..a).rev().collect() };
                for c in cols {
                    if let Some(&k) = index.get(&(r, c)) {
                        visits.push((k, false));
                    }
                }
                let c = self.x[r];
                let (from, to) = (xi[c], oi[c]);
                let rows: Vec<usize> =
                    if from < to { (from + 1..to).collect() } else { (to + 1..from).rev().collect() };
                for rr in rows {
                    if let Some(&k) = index.get(&(rr, c)) {
                        visits.push((k, true));
                    }
                }
                r = nu[r];
                if r == comp[0] {
                    break;
                }
            }
            if visits.is_empty() {
                free_loops += 1;
                continue;
            }
            let m = visits.len();
            for (j, &(k, vertical)) in visits.iter().enumerate() {
                let inc = next_edge + (j + m - 1) % m;
                let out = next_edge + j;
                if vertical {
                    vert[k] = (inc, out);
                } else {
                    horiz[k] = (inc, out);
                }
            }
            next_edge += m;
        }
        let mut crossings = Vec::with_capacity(cells.len());
        for (k, &(r, c, _)) in cells.iter().enumerate() {
            let right = self.x[r] > self.o[r];
            let up = oi[c] > xi[c];
            let (hin, hout) = horiz[k];
            let (vin, vout) = vert[k];
            let (south, north) = if up { (vin, vout) } else { (vout, vin) };
            // Counterclockwise from the incoming under edge.
            let (slots, over_in) = if right {
                ([hin, south, hout, north], if up { 1 } else { 3 })
            } else {
                ([hin, north, hout, south], if up { 3 } else { 1 })
            };
            crossings.push(Crossing { slots, over_in });
        }
        Ok(PDCode::new(crossings, free_loops, None)?)
    }

    /// Swaps X and O in every row of the listed components.
    pub fn reverse(&self, components: &[usize]) -> Result<GridDiagram, GridError> {
        let comp = self.row_component();
        let l = self.n_components();
        if let Some(&c) = components.iter().find(|&&c| c >= l) {
            return Err(GridError::Invalid(format!("component {c} out of range (link has {l})")));
        }
        let (mut x, mut o) = (self.x.clone(), self.o.clone());
        for r in 0..self.n() {
            if components.contains(&comp[r]) {
                std::mem::swap(&mut x[r], &mut o[r]);
            }
        }
        GridDiagram::new(x, o)
    }

    /// Cyclic translation by `dr` rows and `dc` columns.
    pub fn translate(&self, dr: usize, dc: usize) -> GridDiagram {
        let n = self.n();
        let mut x = vec![0; n];
        let mut o = vec![0; n];
        for r in 0..n {
            x[(r + dr) % n] = (self.x[r] + dc) % n;
            o[(r + dr) % n] = (self.o[r] + dc) % n;
        }
        GridDiagram { x, o }
    }

    /// Replaces the X of row `row` by a 2×2 block with the new O at
    /// `corner` and X markings on the other diagonal. The result has one
    /// more basepoint pair and presents the same link.
    pub fn stabilize(&self, row: usize, corner: Corner) -> Result<GridDiagram, GridError> {
        let n = self.n();
        if row >= n {
            return Err(GridError::Invalid(format!("row {row} out of range")));
        }
        if n == 1 {
            // Same move on the 1×1 grid, whose X and O share the cell.
            let (dx, dy) = corner.offsets();
            let mut x = vec![0; 2];
            let mut o = vec![0; 2];
            x[dy] = 1 - dx;
            o[dy] = dx;
            x[1 - dy] = dx;
            o[1 - dy] = 1 - dx;
            return GridDiagram::new(x, o);
        }
        let (dx, dy) = corner.offsets();
        let c = self.x[row];
        let colmap = |k: usize| -> usize {
            match k.cmp(&c) {
                std::cmp::Ordering::Less => k,
                std::cmp::Ordering::Greater => k + 1,
                std::cmp::Ordering::Equal => c + 1 - dx,
            }
        };
        let mut x = vec![0; n + 1];
        let mut o = vec![0; n + 1];
        for r in 0..n {
            if r == row {
                continue;
            }
            let nr = if r < row { r } else { r + 1 };
            x[nr] = colmap(self.x[r]);
            o[nr] = colmap(self.o[r]);
        }
        x[row + 1 - dy] = c + dx;
        o[row + 1 - dy] = colmap(self.o[row]);
        x[row + dy] = c + 1 - dx;
        o[row + dy] = c + dx;
        GridDiagram::new(x, o)
    }

    /// Block-diagonal sum: `self` bottom left, `other` top right.
    pub fn disjoint_union(&self, other: &GridDiagram) -> GridDiagram {
        let k = self.n();
        let x = self.x.iter().copied().chain(other.x.iter().map(|c| c + k)).collect();
        let o = self.o.iter().copied().chain(other.o.iter().map(|c| c + k)).collect();
        GridDiagram { x, o }
    }

    /// Connected sum along the component of `self` through row `row1` and
    /// the component of `other` through row `row2`. The grids overlap in
    /// one cell where an X of `self` meets an O of `other`; both markings
    /// are removed.
    pub fn connected_sum_at(&self, row1: usize, other: &GridDiagram, row2: usize) -> Result<GridDiagram, GridError> {
        let (n1, n2) = (self.n(), other.n());
        if row1 >= n1 || row2 >= n2 {
            return Err(GridError::Invalid("row out of range".into()));
        }
        if n1 < 2 || n2 < 2 {
            return Err(GridError::Invalid("connected sum needs grids of size at least 2".into()));
        }
        // Move the X of row1 to the top right cell, the O of row2 to the
        // bottom left cell.
        let a = self.translate(n1 - 1 - row1, n1 - 1 - self.x[row1]);
        let b = other.translate(n2 - row2, n2 - other.o[row2]);
        let m = n1 + n2 - 1;
        let s = n1 - 1;
        let mut x = vec![usize::MAX; m];
        let mut o = vec![usize::MAX; m];
        for r in 0..n1 - 1 {
            x[r] = a.x[r];
            o[r] = a.o[r];
        }
        for r in 1..n2 {
            x[s + r] = b.x[r] + s;
            o[s + r] = b.o[r] + s;
        }
        // Shared row: O from `self`, X from `other`.
        o[s] = a.o[s];
        x[s] = b.x[0] + s;
        GridDiagram::new(x, o)
    }

    /// Connected sum through rows 0 of both grids.
    pub fn connected_sum(&self, other: &GridDiagram) -> Result<GridDiagram, GridError> {
        self.connected_sum_at(0, other, 0)
    }

    /// Text form `X: 1 2 0 / O: 2 0 1`.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        format!("X: {} / O: {}", join(&self.x), join(&self.o))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GridError> {
        serde_json::from_str(s).map_err(|e| GridError::Parse(e.to_string()))
    }

    /// Parses the JSON form or the text form.
    pub fn parse(s: &str) -> Result<Self, GridError> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            s.parse()
        }
    }
}

impl FromStr for GridDiagram {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, GridError> {
        let mut x = None;
        let mut o = None;
        for part in s.split(['/', '\n']) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, vals) =
                part.split_once(':').ok_or_else(|| GridError::Parse(format!("expected `X:` or `O:` in `{part}`")))?;
            let vals: Vec<usize> = vals
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| GridError::Parse(format!("bad column `{t}`"))))
                .collect::<Result<_, _>>()?;
            match key.trim() {
                "X" | "x" => x = Some(vals),
                "O" | "o" => o = Some(vals),
                k => return Err(GridError::Parse(format!("unknown key `{k}`"))),
            }
        }
        match (x, o) {
            (Some(x), Some(o)) => GridDiagram::new(x, o),
            _ => Err(GridError::Parse("both X and O rows are required".into())),
        }
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Cycles of a permutation, each starting at its smallest element, ordered
/// by that element.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut c = vec![s];
        seen[s] = true;
        let mut k = p[s];
        while k != s {
            seen[k] = true;
            c.push(k);
            k = p[k];
        }
        out.push(c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::corpus::{torus_grid, unknot_grid};

    #[test]
    fn parses_both_formats() {
        let g: GridDiagram = "X: 1 2 3 4 0 / O: 3 4 0 1 2".parse().unwrap();
        assert_eq!(g.n(), 5);
        let j = g.to_json();
        assert_eq!(j, r#"{"n":5,"X":[1,2,3,4,0],"O":[3,4,0,1,2]}"#);
        assert_eq!(GridDiagram::parse(&j).unwrap(), g);
        assert_eq!(GridDiagram::parse(&g.to_text()).unwrap(), g);
        assert!(GridDiagram::parse(r#"{"n":3,"X":[0,1],"O":[1,0]}"#).is_err());
        assert!("X: 0 0 / O: 1 0".parse::<GridDiagram>().is_err());
        assert!("X: 0 1 / O: 0 1".parse::<GridDiagram>().is_err());
    }

    #[test]
    fn successor_cycles() {
        assert_eq!(unknot_grid(1).successor(), vec![0]);
        let t = torus_grid(5, 2);
        assert_eq!(t.components().len(), 1);
        assert_eq!(t.components()[0].len(), 5);
        assert_eq!(torus_grid(4, 2).n_components(), 2);
    }

    #[test]
    fn induced_diagram_matches_grid() {
        for (g, l, w) in [(torus_grid(5, 2), 1, 3), (torus_grid(4, 2), 2, 2), (unknot_grid(3), 1, 0)] {
            let pd = g.to_pd().unwrap();
            assert_eq!(pd.n_components(), l);
            assert_eq!(pd.writhe().abs(), w);
            assert_eq!(pd.writhe(), g.writhe());
        }
    }

    #[test]
    fn stabilization_grows_by_one() {
        let t = torus_grid(5, 2);
        for r in 0..5 {
            for c in Corner::ALL {
                let s = t.stabilize(r, c).unwrap();
                assert_eq!(s.n(), 6);
                assert_eq!(s.n_components(), 1);
            }
        }
        assert_eq!(unknot_grid(1).stabilize(0, Corner::NE).unwrap().n(), 2);
    }

    #[test]
    fn reversing_nothing_is_identity() {
        let t = torus_grid(4, 2);
        assert_eq!(t.reverse(&[]).unwrap(), t);
        assert!(t.reverse(&[2]).is_err());
        assert_eq!(t.reverse(&[0, 1]).unwrap().reverse(&[0, 1]).unwrap(), t);
    }

    #[test]
    fn sums_and_unions() {
        let t = torus_grid(5, 2);
        let s = t.connected_sum(&t).unwrap();
        assert_eq!(s.n(), 9);
        assert_eq!(s.n_components(), 1);
        let u = t.disjoint_union(&unknot_grid(2));
        assert_eq!(u.n(), 7);
        assert_eq!(u.n_components(), 2);
    }
}
