//! Cube of resolutions and the Khovanov complex of a face of it.
//!
//! A face fixes some crossings to 0 or 1 and leaves the rest free; the
//! whole cube is the face with nothing fixed. Generators at a vertex are
//! bitmasks over its circles (bit set = circle labelled `x`) and sit at
//! index `offset[vertex] + label`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{GradedComplex, GradedMap, Grading, Scalar, SparseMatrix, SparseVec};
use crate::diagrams::{Crossing, PDCode};
use crate::khovanov::KhError;

/// Largest number of free crossings accepted.
pub const MAX_FREE_CROSSINGS: usize = 22;

#[derive(Clone, Debug)]
struct Vertex {
    /// Circle of every edge.
    edge_circle: Vec<u32>,
    /// One edge on each circle that has edges.
    reps: Vec<usize>,
    /// Circles including free loops.
    count: usize,
}

/// Bookkeeping for one face of the cube of a diagram.
#[derive(Clone, Debug)]
pub struct Face {
    diagram: PDCode,
    fixed: Vec<(usize, u8)>,
    free: Vec<usize>,
    vertices: Vec<Vertex>,
    offsets: Vec<usize>,
    n_plus: usize,
    n_minus: usize,
}

impl Face {
    /// Face of `pd` with `fixed` crossings resolved; gradings use the sign
    /// counts of `oriented`, an oriented diagram of the resolved link with
    /// the free crossings in the same order.
    pub fn new(pd: &PDCode, fixed: &[(usize, u8)], oriented: &PDCode) -> Result<Face, KhError> {
        let mut fixed = fixed.to_vec();
        fixed.sort();
        fixed.dedup();
        for w in fixed.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(KhError::Face(format!("crossing {} fixed twice", w[0].0)));
            }
        }
        if let Some(&(c, r)) = fixed.iter().find(|(c, r)| *c >= pd.n_crossings() || *r > 1) {
            return Err(KhError::Face(format!("bad fixed resolution ({c}, {r})")));
        }
        let free: Vec<usize> = (0..pd.n_crossings()).filter(|c| !fixed.iter().any(|f| f.0 == *c)).collect();
        if free.len() > MAX_FREE_CROSSINGS {
            return Err(KhError::TooLarge(free.len()));
        }
        if oriented.n_crossings() != free.len() {
            return Err(KhError::Face("oriented diagram has the wrong crossing count".into()));
        }
        let mut template = vec![0u8; pd.n_crossings()];
        for &(c, r) in &fixed {
            template[c] = r;
        }
        let vertices: Vec<Vertex> = (0..1usize << free.len())
            .into_par_iter()
            .map(|v| {
                let mut state = template.clone();
                for (p, &c) in free.iter().enumerate() {
                    state[c] = (v >> p & 1) as u8;
                }
                let sc = pd.state_circles(&state);
                let with_edges = sc.count - pd.free_loops();
                let mut reps = vec![usize::MAX; with_edges];
                for (e, &c) in sc.edge_circle.iter().enumerate() {
                    if reps[c] == usize::MAX {
                        reps[c] = e;
                    }
                }
                Vertex { edge_circle: sc.edge_circle.iter().map(|&c| c as u32).collect(), reps, count: sc.count }
            })
            .collect();
        let mut offsets = Vec::with_capacity(vertices.len() + 1);
        let mut acc = 0usize;
        for v in &vertices {
            offsets.push(acc);
            acc += 1usize << v.count;
        }
        offsets.push(acc);
        let stats = oriented.crossing_signs();
        Ok(Face { diagram: pd.clone(), fixed, free, vertices, offsets, n_plus: stats.n_plus, n_minus: stats.n_minus })
    }

    /// The whole cube of `pd`.
    pub fn full(pd: &PDCode) -> Result<Face, KhError> {
        Face::new(pd, &[], pd)
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn fixed(&self) -> &[(usize, u8)] {
        &self.fixed
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn circles(&self, v: usize) -> usize {
        self.vertices[v].count
    }

    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    /// Circle through edge `e` at vertex `v`; a diagram without edges uses
    /// `e` as a free-loop index.
    pub fn circle_of(&self, v: usize, e: usize) -> usize {
        if self.diagram.n_edges() == 0 {
            e
        } else {
            self.vertices[v].edge_circle[e] as usize
        }
    }

    /// Bigrading (half units) of the generator `(v, label)`.
    pub fn grading(&self, v: usize, label: u64) -> Grading {
        let h = v.count_ones() as i32;
        let k = self.vertices[v].count as i32;
        let xs = label.count_ones() as i32;
        let i = h - self.n_minus as i32;
        let j = (k - 2 * xs) + h + self.n_plus as i32 - 2 * self.n_minus as i32;
        (2 * i, 2 * j)
    }

    pub fn gradings(&self) -> Vec<Grading> {
        (0..self.vertices.len())
            .into_par_iter()
            .flat_map_iter(|v| (0..1u64 << self.vertices[v].count).map(move |l| self.grading(v, l)))
            .collect()
    }

    /// Labels at the vertex reached by changing crossing `c` (a crossing of
    /// the underlying diagram, 0 at `src`) from 0 to 1, where `src` and `dst`
    /// are the vertex data on either side.
    fn edge_images(&self, src: &Vertex, dst: &Vertex, c: &Crossing, label: u64) -> ([u64; 2], usize) {
        let s = c.slots;
        let loops = self.diagram.free_loops();
        let ke = src.count - loops;
        let k2e = dst.count - loops;
        let a = src.edge_circle[s[0]] as usize;
        let b = src.edge_circle[s[2]] as usize;
        let mut base = 0u64;
        for j in 0..loops {
            if label >> (ke + j) & 1 == 1 {
                base |= 1 << (k2e + j);
            }
        }
        for (circle, &rep) in src.reps.iter().enumerate() {
            if circle == a || circle == b {
                continue;
            }
            if label >> circle & 1 == 1 {
                base |= 1 << dst.edge_circle[rep];
            }
        }
        if a != b {
            // Merge.
            let m = dst.edge_circle[s[0]];
            let (xa, xb) = (label >> a & 1, label >> b & 1);
            if xa == 1 && xb == 1 {
                ([0, 0], 0)
            } else if xa == 1 || xb == 1 {
                ([base | 1 << m, 0], 1)
            } else {
                ([base, 0], 1)
            }
        } else {
            // Split into the circle through slots 0,3 and the one through 1,2.
            let c1 = dst.edge_circle[s[0]];
            let c2 = dst.edge_circle[s[1]];
            if label >> a & 1 == 1 {
                ([base | 1 << c1 | 1 << c2, 0], 1)
            } else {
                ([base | 1 << c1, base | 1 << c2], 2)
            }
        }
    }

    /// The face's own differential with the usual cube signs.
    pub fn complex<K: Scalar>(&self, field: crate::algebra::Field) -> Result<GradedComplex<K>, KhError> {
        let n = self.len();
        let one = K::one(field);
        let minus = one.neg();
        let columns: Vec<SparseVec<K>> = (0..self.vertices.len())
            .into_par_iter()
            .flat_map_iter(|v| {
                let vert = &self.vertices[v];
                let one = one.clone();
                let minus = minus.clone();
                (0..1u64 << vert.count).map(move |label| {
                    let mut col: SparseVec<K> = Vec::new();
                    for (p, &c) in self.free.iter().enumerate() {
                        if v >> p & 1 == 1 {
                            continue;
                        }
                        let w = v | 1 << p;
                        let sign = if (v & ((1 << p) - 1)).count_ones() % 2 == 0 { one.clone() } else { minus.clone() };
                        let (imgs, k) = self.edge_images(vert, &self.vertices[w], &self.diagram.crossings()[c], label);
                        for img in &imgs[..k] {
                            col.push((self.offsets[w] + *img as usize, sign.clone()));
                        }
                    }
                    col
                })
            })
            .collect();
        let d = SparseMatrix::from_columns(n, field, columns);
        Ok(GradedComplex::new(self.gradings(), d, (2, 0))?)
    }

    /// Matrix of the cube edges in direction `c` from this face (where `c` is
    /// fixed at 0) to `target` (the same face with `c` fixed at 1). No signs:
    /// both faces use the same sign rule on their free crossings, so this
    /// commutes with the two differentials.
    pub fn edge_matrix<K: Scalar>(
        &self,
        target: &Face,
        c: usize,
        field: crate::algebra::Field,
    ) -> Result<SparseMatrix<K>, KhError> {
        let mut expect = self.fixed.clone();
        let pos = expect
            .iter()
            .position(|f| *f == (c, 0))
            .ok_or_else(|| KhError::Face(format!("crossing {c} is not fixed at 0 in the source")))?;
        expect[pos] = (c, 1);
        if expect != target.fixed || self.diagram != target.diagram {
            return Err(KhError::Face("target is not the adjacent face".into()));
        }
        let x = self.diagram.crossings()[c];
        let one = K::one(field);
        let columns: Vec<SparseVec<K>> = (0..self.vertices.len())
            .into_par_iter()
            .flat_map_iter(|v| {
                let one = one.clone();
                (0..1u64 << self.vertices[v].count).map(move |label| {
                    let (imgs, k) = self.edge_images(&self.vertices[v], &target.vertices[v], &x, label);
                    imgs[..k].iter().map(|img| (target.offsets[v] + *img as usize, one.clone())).collect()
                })
            })
            .collect();
        Ok(SparseMatrix::from_columns(target.len(), field, columns))
    }

    pub fn sign_counts(&self) -> (usize, usize) {
        (self.n_plus, self.n_minus)
    }
}

/// A Khovanov complex together with the face it came from.
#[derive(Clone, Debug)]
pub struct KhComplex<K> {
    pub face: Arc<Face>,
    pub complex: Arc<GradedComplex<K>>,
}

impl<K: Scalar> KhComplex<K> {
    pub fn new(face: Face, field: crate::algebra::Field) -> Result<Self, KhError> {
        let complex = Arc::new(face.complex(field)?);
        Ok(KhComplex { face: Arc::new(face), complex })
    }

    /// The cube map in direction `c` to the adjacent face, as a chain map.
    pub fn map_to(&self, target: &KhComplex<K>, c: usize) -> Result<GradedMap<K>, KhError> {
        let field = self.complex.field();
        let m = self.face.edge_matrix::<K>(&target.face, c, field)?;
        let (p0, m0) = self.face.sign_counts();
        let (p1, m1) = target.face.sign_counts();
        let di = m0 as i32 - m1 as i32;
        let dj = -1 + (p1 as i32 - p0 as i32) - 2 * (m1 as i32 - m0 as i32);
        Ok(GradedMap::new(self.complex.clone(), target.complex.clone(), m, (2 * di, 2 * dj))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{homology, BigradedDims, Field, Modp};
    use crate::diagrams::io::parse_text;

    fn kh(pd: &PDCode) -> BigradedDims {
        homology(&Face::full(pd).unwrap().complex::<Modp>(Field::F2).unwrap())
    }

    #[test]
    fn unknot_without_crossings() {
        let d = kh(&PDCode::unlink(1));
        assert_eq!(d, BigradedDims::from_int_pairs(&[((0, 1), 1), ((0, -1), 1)]));
    }

    #[test]
    fn kink_has_unknot_homology() {
        for text in ["X[1,1,2,2]\norientation: +", "X[1,2,2,1]\norientation: -"] {
            let d = kh(&parse_text(text).unwrap());
            assert_eq!(d, BigradedDims::from_int_pairs(&[((0, 1), 1), ((0, -1), 1)]), "{text}");
        }
    }

    #[test]
    fn generator_counts_sum_over_vertices() {
        let pd = parse_text("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]").unwrap();
        let f = Face::full(&pd).unwrap();
        let expected: usize = (0..8).map(|v| 1usize << f.circles(v)).sum();
        assert_eq!(f.len(), expected);
        assert_eq!(f.gradings().len(), expected);
    }
}
