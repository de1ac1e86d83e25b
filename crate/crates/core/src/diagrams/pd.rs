//! Oriented planar diagrams.
//!
//! A crossing lists its four edges counterclockwise starting at the incoming
//! under-strand edge, so the under strand runs slot 0 → slot 2. The over
//! strand enters at slot `over_in` (1 or 3) and leaves at the opposite slot.
//! A crossing is positive exactly when the over strand enters at slot 3.
//!
//! Smoothings depend only on the picture: the 0-smoothing joins slots (0,1)
//! and (2,3), the 1-smoothing joins (0,3) and (1,2). At a positive crossing
//! the 0-smoothing is the oriented one.

use serde::{Deserialize, Serialize};

use crate::diagrams::DiagramError;

/// A position on a crossing: `(crossing index, slot)`.
pub type Dart = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub slots: [usize; 4],
    pub over_in: u8,
}

impl Crossing {
    pub fn sign(&self) -> i8 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in as usize
    }

    /// Slot pairs joined by the given smoothing.
    pub fn smoothing_pairs(r: u8) -> [(usize, usize); 2] {
        if r == 0 {
            [(0, 1), (2, 3)]
        } else {
            [(0, 3), (1, 2)]
        }
    }
}

/// Counts of positive and negative crossings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingStats {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl CrossingStats {
    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
}

/// Circles of one resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCircles {
    /// Total circle count, free loops included.
    pub count: usize,
    /// Circle label of every edge; free loops take the last labels.
    pub edge_circle: Vec<usize>,
}

/// An oriented link diagram: crossings over edges `0..n_edges`, plus
/// crossingless circles and an optional basepoint edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PDCode {
    crossings: Vec<Crossing>,
    n_edges: usize,
    free_loops: usize,
    basepoint: Option<usize>,
}

/// First invariant violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Diagnostic {
    #[error("crossing {crossing}: over-strand flag must be 1 or 3")]
    BadOverFlag { crossing: usize },
    #[error("dangling edge {edge}: appears once")]
    DanglingEdge { edge: usize },
    #[error("edge {edge} appears {count} times")]
    OverusedEdge { edge: usize, count: usize },
    #[error("edge {edge} is never used")]
    UnusedEdge { edge: usize },
    #[error("edge {edge} is inconsistently oriented")]
    Orientation { edge: usize },
    #[error("not planar: {faces} faces, expected {expected}")]
    NonPlanar { faces: usize, expected: usize },
    #[error("basepoint edge {edge} out of range")]
    Basepoint { edge: usize },
}

/// Checks every invariant and reports the first failure.
pub fn validate(pd: &PDCode) -> Result<(), Diagnostic> {
    for (i, c) in pd.crossings.iter().enumerate() {
        if c.over_in != 1 && c.over_in != 3 {
            return Err(Diagnostic::BadOverFlag { crossing: i });
        }
    }
    let mut count = vec![0usize; pd.n_edges];
    let mut heads = vec![0usize; pd.n_edges];
    for c in &pd.crossings {
        for (s, &e) in c.slots.iter().enumerate() {
            if e >= pd.n_edges {
                return Err(Diagnostic::DanglingEdge { edge: e });
            }
            count[e] += 1;
            if c.is_incoming(s) {
                heads[e] += 1;
            }
        }
    }
    for (e, &n) in count.iter().enumerate() {
        match n {
            2 => {}
            0 => return Err(Diagnostic::UnusedEdge { edge: e }),
            1 => return Err(Diagnostic::DanglingEdge { edge: e }),
            _ => return Err(Diagnostic::OverusedEdge { edge: e, count: n }),
        }
    }
    if let Some(e) = heads.iter().position(|&h| h != 1) {
        return Err(Diagnostic::Orientation { edge: e });
    }
    let (faces, expected) = face_count(&pd.geometry(), pd.n_edges);
    if faces != expected {
        return Err(Diagnostic::NonPlanar { faces, expected });
    }
    if let Some(b) = pd.basepoint {
        if b >= pd.n_edges {
            return Err(Diagnostic::Basepoint { edge: b });
        }
    }
    Ok(())
}

/// Darts of every edge (assumes each edge occurs exactly twice).
fn edge_darts(geo: &[[usize; 4]], n_edges: usize) -> Vec<[Dart; 2]> {
    let mut darts: Vec<Vec<Dart>> = vec![Vec::with_capacity(2); n_edges];
    for (c, slots) in geo.iter().enumerate() {
        for (s, &e) in slots.iter().enumerate() {
            darts[e].push((c, s));
        }
    }
    darts.into_iter().map(|d| [d[0], d[1]]).collect()
}

fn other_end(darts: &[[Dart; 2]], geo: &[[usize; 4]], d: Dart) -> Dart {
    let pair = darts[geo[d.0][d.1]];
    if pair[0] == d {
        pair[1]
    } else {
        pair[0]
    }
}

/// Number of faces of the rotation system and the count an embedding in
/// the plane must have.
pub(crate) fn face_count(geo: &[[usize; 4]], n_edges: usize) -> (usize, usize) {
    if geo.is_empty() {
        return (0, 0);
    }
    let darts = edge_darts(geo, n_edges);
    let mut seen = vec![[false; 4]; geo.len()];
    let mut faces = 0;
    for c in 0..geo.len() {
        for s in 0..4 {
            if seen[c][s] {
                continue;
            }
            faces += 1;
            let mut d = (c, s);
            while !seen[d.0][d.1] {
                seen[d.0][d.1] = true;
                d = other_end(&darts, geo, (d.0, (d.1 + 1) % 4));
            }
        }
    }
    let mut uf = UnionFind::new(geo.len());
    for pair in &darts {
        uf.union(pair[0].0, pair[1].0);
    }
    let pieces = (0..geo.len()).filter(|&c| uf.find(c) == c).count();
    (faces, geo.len() + 2 * pieces)
}

/// Disjoint-set forest with path halving.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins so labels stay deterministic.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

impl PDCode {
    /// Builds and validates.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize, basepoint: Option<usize>) -> Result<Self, DiagramError> {
        let n_edges = crossings.iter().flat_map(|c| c.slots).max().map_or(0, |m| m + 1);
        let pd = PDCode { crossings, n_edges, free_loops, basepoint };
        validate(&pd)?;
        Ok(pd)
    }

    /// The crossingless diagram of the `k`-component unlink.
    pub fn unlink(k: usize) -> Self {
        PDCode { crossings: Vec::new(), n_edges: 0, free_loops: k, basepoint: None }
    }

    /// Builds an oriented diagram from unoriented crossings (under strand on
    /// slots 0 and 2, counterclockwise). Each component is oriented to agree
    /// with `prefer_incoming` at its first dart (in `(crossing, slot)` order)
    /// that has a preference; otherwise its smallest edge leaves its
    /// smaller dart. Edges are renumbered in traversal order; the returned
    /// vector maps input edge ids to new ones.
    pub fn from_geometry(
        geo: &[[usize; 4]],
        free_loops: usize,
        basepoint: Option<usize>,
        prefer_incoming: &dyn Fn(Dart) -> Option<bool>,
    ) -> Result<(Self, Vec<Option<usize>>), DiagramError> {
        let n_in = geo.iter().flat_map(|s| s.iter().copied()).max().map_or(0, |m| m + 1);
        let mut count = vec![0usize; n_in];
        for s in geo {
            for &e in s {
                count[e] += 1;
            }
        }
        if let Some(e) = count.iter().position(|&c| c != 2 && c != 0) {
            return Err(DiagramError::Invalid(if count[e] == 1 {
                Diagnostic::DanglingEdge { edge: e }
            } else {
                Diagnostic::OverusedEdge { edge: e, count: count[e] }
            }));
        }
        // Compact ids of used edges first so darts are well defined.
        let mut compact = vec![usize::MAX; n_in];
        let mut n_used = 0;
        for (e, &c) in count.iter().enumerate() {
            if c == 2 {
                compact[e] = n_used;
                n_used += 1;
            }
        }
        let g: Vec<[usize; 4]> = geo.iter().map(|s| s.map(|e| compact[e])).collect();
        let darts = edge_darts(&g, n_used);
        // head[e] = dart where e enters.
        let mut head: Vec<Option<Dart>> = vec![None; n_used];
        let mut new_id = vec![usize::MAX; n_used];
        let mut next_id = 0;
        for start in 0..n_used {
            if head[start].is_some() {
                continue;
            }
            // Walk with a provisional direction: enter at darts[start][1].
            let mut order: Vec<(usize, Dart)> = Vec::new();
            let (mut e, mut h) = (start, darts[start][1]);
            loop {
                order.push((e, h));
                let out = (h.0, (h.1 + 2) % 4);
                e = g[out.0][out.1];
                h = other_end(&darts, &g, out);
                if e == start {
                    break;
                }
            }
            // Every dart of the component with its provisional incoming flag.
            let mut flags: Vec<(Dart, bool)> = Vec::with_capacity(2 * order.len());
            for (e, h) in &order {
                flags.push((*h, true));
                let t = if darts[*e][0] == *h { darts[*e][1] } else { darts[*e][0] };
                flags.push((t, false));
            }
            flags.sort();
            let flip = flags.iter().find_map(|(d, inc)| prefer_incoming(*d).map(|p| p != *inc)).unwrap_or_else(|| {
                // Default: the smallest edge leaves its smaller dart.
                let smallest = order.iter().map(|x| x.0).min().expect("nonempty");
                let h = order.iter().find(|x| x.0 == smallest).expect("present").1;
                h == darts[smallest][0].min(darts[smallest][1])
            });
            let mut oriented: Vec<(usize, Dart)> = if flip {
                let mut rev: Vec<(usize, Dart)> = order
                    .iter()
                    .map(|(e, h)| {
                        let t = if darts[*e][0] == *h { darts[*e][1] } else { darts[*e][0] };
                        (*e, t)
                    })
                    .collect();
                rev.reverse();
                rev
            } else {
                order
            };
            // Number from the smallest input edge of the component.
            let min_pos = oriented.iter().enumerate().min_by_key(|(_, (e, _))| *e).map(|(i, _)| i).expect("nonempty");
            oriented.rotate_left(min_pos);
            for (e, h) in oriented {
                head[e] = Some(h);
                new_id[e] = next_id;
                next_id += 1;
            }
        }
        let mut crossings = Vec::with_capacity(g.len());
        for (c, slots) in g.iter().enumerate() {
            let under_in = head[slots[0]] == Some((c, 0));
            let rot = if under_in { 0 } else { 2 };
            let new_slots = [0, 1, 2, 3].map(|i| new_id[slots[(i + rot) % 4]]);
            let over_slot_in = if head[slots[(1 + rot) % 4]] == Some((c, (1 + rot) % 4)) { 1 } else { 3 };
            crossings.push(Crossing { slots: new_slots, over_in: over_slot_in });
        }
        let edge_map: Vec<Option<usize>> =
            (0..n_in).map(|e| (compact[e] != usize::MAX).then(|| new_id[compact[e]])).collect();
        let pd = PDCode {
            crossings,
            n_edges: n_used,
            free_loops,
            basepoint: basepoint.and_then(|b| edge_map.get(b).copied().flatten()),
        };
        validate(&pd)?;
        Ok((pd, edge_map))
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn with_basepoint(mut self, edge: Option<usize>) -> Result<Self, DiagramError> {
        if let Some(e) = edge {
            if e >= self.n_edges {
                return Err(DiagramError::Invalid(Diagnostic::Basepoint { edge: e }));
            }
        }
        self.basepoint = edge;
        Ok(self)
    }

    /// Crossings as unoriented pictures (slot order unchanged).
    pub fn geometry(&self) -> Vec<[usize; 4]> {
        self.crossings.iter().map(|c| c.slots).collect()
    }

    /// Dart where each edge enters a crossing.
    pub fn heads(&self) -> Vec<Dart> {
        let mut h = vec![(usize::MAX, 0); self.n_edges];
        for (i, c) in self.crossings.iter().enumerate() {
            for (s, &e) in c.slots.iter().enumerate() {
                if c.is_incoming(s) {
                    h[e] = (i, s);
                }
            }
        }
        h
    }

    /// Dart where each edge leaves a crossing.
    pub fn tails(&self) -> Vec<Dart> {
        let mut t = vec![(usize::MAX, 0); self.n_edges];
        for (i, c) in self.crossings.iter().enumerate() {
            for (s, &e) in c.slots.iter().enumerate() {
                if !c.is_incoming(s) {
                    t[e] = (i, s);
                }
            }
        }
        t
    }

    /// Components with crossings, each as its edges in traversal order,
    /// starting from the smallest edge. Free loops are not listed.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let heads = self.heads();
        let mut seen = vec![false; self.n_edges];
        let mut out = Vec::new();
        for start in 0..self.n_edges {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            loop {
                seen[e] = true;
                comp.push(e);
                let (c, s) = heads[e];
                e = self.crossings[c].slots[(s + 2) % 4];
                if e == start {
                    break;
                }
            }
            out.push(comp);
        }
        out
    }

    /// Number of link components, free loops included.
    pub fn n_components(&self) -> usize {
        self.components().len() + self.free_loops
    }

    /// Component index of every edge.
    pub fn edge_component(&self) -> Vec<usize> {
        let mut ec = vec![0; self.n_edges];
        for (i, comp) in self.components().iter().enumerate() {
            for &e in comp {
                ec[e] = i;
            }
        }
        ec
    }

    pub fn crossing_signs(&self) -> CrossingStats {
        let n_plus = self.crossings.iter().filter(|c| c.sign() > 0).count();
        CrossingStats { n_plus, n_minus: self.crossings.len() - n_plus }
    }

    pub fn writhe(&self) -> i64 {
        self.crossing_signs().writhe()
    }

    /// Circles of the resolution `state` (bit `k` = smoothing at crossing `k`).
    pub fn state_circles(&self, state: &[u8]) -> StateCircles {
        assert_eq!(state.len(), self.crossings.len(), "state length");
        let mut uf = UnionFind::new(self.n_edges);
        for (c, &r) in self.crossings.iter().zip(state) {
            for (a, b) in Crossing::smoothing_pairs(r) {
                uf.union(c.slots[a], c.slots[b]);
            }
        }
        let mut label = vec![usize::MAX; self.n_edges];
        let mut edge_circle = vec![0; self.n_edges];
        let mut count = 0;
        for e in 0..self.n_edges {
            let r = uf.find(e);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            edge_circle[e] = label[r];
        }
        StateCircles { count: count + self.free_loops, edge_circle }
    }

    /// Replaces crossing `c` by its `r`-smoothing and reorients. Later
    /// crossings shift down by one. Returns the new diagram and the map from
    /// old edges to new edges (`None` for edges now on free loops).
    pub fn resolve(&self, c: usize, r: u8) -> Result<(PDCode, Vec<Option<usize>>), DiagramError> {
        if c >= self.crossings.len() {
            return Err(DiagramError::CrossingIndex(c));
        }
        let mut uf = UnionFind::new(self.n_edges);
        let slots = self.crossings[c].slots;
        for (a, b) in Crossing::smoothing_pairs(r) {
            uf.union(slots[a], slots[b]);
        }
        let mut geo = Vec::with_capacity(self.crossings.len() - 1);
        let mut old_dart = Vec::with_capacity(self.crossings.len() - 1);
        for (i, x) in self.crossings.iter().enumerate() {
            if i != c {
                geo.push(x.slots.map(|e| uf.find(e)));
                old_dart.push(i);
            }
        }
        let mut used = vec![false; self.n_edges];
        for s in &geo {
            for &e in s {
                used[e] = true;
            }
        }
        let roots: Vec<usize> = (0..self.n_edges).filter(|&e| uf.find(e) == e).collect();
        let new_loops = roots.iter().filter(|&&e| !used[e]).count();
        let pref = |d: Dart| Some(self.crossings[old_dart[d.0]].is_incoming(d.1));
        let bp = self.basepoint.map(|b| uf.find(b));
        let (pd, class_map) = PDCode::from_geometry(&geo, self.free_loops + new_loops, bp, &pref)?;
        let edge_map = (0..self.n_edges).map(|e| class_map.get(uf.find(e)).copied().flatten()).collect();
        Ok((pd, edge_map))
    }

    /// Mirror image: every crossing changes.
    pub fn mirror(&self) -> PDCode {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.slots;
                if x.over_in == 1 {
                    Crossing { slots: [b, c, d, a], over_in: 3 }
                } else {
                    Crossing { slots: [d, a, b, c], over_in: 1 }
                }
            })
            .collect();
        PDCode { crossings, ..self.clone() }
    }

    /// Reverses the listed components (indices into [`PDCode::components`]).
    pub fn reverse(&self, comps: &[usize]) -> PDCode {
        let ec = self.edge_component();
        let rev = |e: usize| comps.contains(&ec[e]);
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let under_rev = rev(x.slots[0]);
                let over_rev = rev(x.slots[1]);
                let slots = if under_rev { [x.slots[2], x.slots[3], x.slots[0], x.slots[1]] } else { x.slots };
                let mut over_in = x.over_in;
                if under_rev != over_rev {
                    over_in ^= 2;
                }
                Crossing { slots, over_in }
            })
            .collect();
        PDCode { crossings, ..self.clone() }
    }

    /// Split union; edges of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &PDCode) -> PDCode {
        let off = self.n_edges;
        let mut crossings = self.crossings.clone();
        crossings
            .extend(other.crossings.iter().map(|x| Crossing { slots: x.slots.map(|e| e + off), over_in: x.over_in }));
        PDCode {
            crossings,
            n_edges: self.n_edges + other.n_edges,
            free_loops: self.free_loops + other.free_loops,
            basepoint: self.basepoint.or(other.basepoint.map(|b| b + off)),
        }
    }

    /// Connected sum splicing edge `e1` of `self` with edge `e2` of `other`.
    /// A diagram with no edges must consist of free loops and acts through
    /// one of them.
    pub fn connected_sum(&self, e1: usize, other: &PDCode, e2: usize) -> Result<PDCode, DiagramError> {
        if self.n_edges == 0 {
            return absorb_loop(self, other);
        }
        if other.n_edges == 0 {
            return absorb_loop(other, self);
        }
        if e1 >= self.n_edges {
            return Err(DiagramError::EdgeIndex(e1));
        }
        if e2 >= other.n_edges {
            return Err(DiagramError::EdgeIndex(e2));
        }
        let u = self.disjoint_union(other);
        let f2 = e2 + self.n_edges;
        let h1 = u.heads()[e1];
        let h2 = u.heads()[f2];
        // e1 now runs from its tail into e2's head; e2 from its tail into e1's head.
        let mut crossings = u.crossings.clone();
        crossings[h2.0].slots[h2.1] = e1;
        crossings[h1.0].slots[h1.1] = f2;
        let geo: Vec<[usize; 4]> = crossings.iter().map(|c| c.slots).collect();
        let pref = |d: Dart| Some(crossings[d.0].is_incoming(d.1));
        let (pd, _) = PDCode::from_geometry(&geo, u.free_loops, u.basepoint, &pref)?;
        Ok(pd)
    }

    /// Resolves several crossings at once; indices refer to this diagram.
    pub fn resolve_many(&self, fixed: &[(usize, u8)]) -> Result<PDCode, DiagramError> {
        let mut order: Vec<(usize, u8)> = fixed.to_vec();
        order.sort_by(|a, b| b.0.cmp(&a.0));
        let mut pd = self.clone();
        for (c, r) in order {
            pd = pd.resolve(c, r)?.0;
        }
        Ok(pd)
    }
}

fn absorb_loop(loops: &PDCode, other: &PDCode) -> Result<PDCode, DiagramError> {
    if loops.free_loops == 0 {
        return Err(DiagramError::EdgeIndex(0));
    }
    let mut out = other.clone();
    out.free_loops += loops.free_loops - 1;
    Ok(out)
}
