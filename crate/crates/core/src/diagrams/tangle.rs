//! Four-ended tangle diagrams and rational tangles.
//!
//! A tangle sits in a disk with ends NW, NE, SE, SW. Crossings use the
//! unoriented form: four edges counterclockwise with the under strand on
//! slots 0 and 2. End edges occur once in `ends` and once in a crossing (or
//! twice in `ends` for an arc joining two ends directly).

use num_integer::Integer;

use crate::diagrams::pd::UnionFind;
use crate::diagrams::{DiagramError, PDCode};

pub const NW: usize = 0;
pub const NE: usize = 1;
pub const SE: usize = 2;
pub const SW: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    crossings: Vec<[usize; 4]>,
    ends: [usize; 4],
    loops: usize,
    n_edges: usize,
}

/// Which end of which input tangle.
#[derive(Clone, Copy)]
enum From {
    A(usize),
    B(usize),
}

impl Tangle {
    /// The horizontal tangle [0]: arcs NW–NE and SW–SE.
    pub fn zero() -> Self {
        Tangle { crossings: Vec::new(), ends: [0, 0, 1, 1], loops: 0, n_edges: 2 }
    }

    /// The vertical tangle 1/[0]: arcs NW–SW and NE–SE.
    pub fn infinity() -> Self {
        Tangle { crossings: Vec::new(), ends: [0, 1, 1, 0], loops: 0, n_edges: 2 }
    }

    /// The single crossing [1]: the under strand runs NW–SE.
    pub fn one() -> Self {
        Tangle { crossings: vec![[0, 3, 2, 1]], ends: [0, 1, 2, 3], loops: 0, n_edges: 4 }
    }

    /// Horizontal twist tangle [n].
    pub fn integer(n: i64) -> Self {
        let unit = if n >= 0 { Tangle::one() } else { Tangle::one().mirror() };
        let mut t = Tangle::zero();
        for _ in 0..n.unsigned_abs() {
            t = t.sum(&unit);
        }
        t
    }

    /// Vertical twist tangle 1/[n].
    pub fn vertical(n: i64) -> Self {
        Tangle::integer(n).inv()
    }

    /// Rational tangle with fraction `p/q` from its continued fraction.
    pub fn rational(p: i64, q: i64) -> Result<Self, DiagramError> {
        if q == 0 {
            return if p.abs() == 1 {
                Ok(Tangle::infinity())
            } else {
                Err(DiagramError::Params(format!("{p}/0 is not reduced")))
            };
        }
        if p.gcd(&q) != 1 {
            return Err(DiagramError::Params(format!("{p}/{q} is not reduced")));
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let a = p / q;
        let r = p % q;
        if r == 0 {
            return Ok(Tangle::integer(a));
        }
        Ok(Tangle::rational(q, r)?.inv().sum(&Tangle::integer(a)))
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn ends(&self) -> [usize; 4] {
        self.ends
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    /// Joins `a` and `b`, identifying the listed end pairs; the new ends are
    /// taken from the given positions.
    fn glue(a: &Tangle, b: &Tangle, pairs: &[(usize, usize)], ends: [From; 4]) -> Tangle {
        let off = a.n_edges;
        let total = a.n_edges + b.n_edges;
        let mut uf = UnionFind::new(total);
        for &(i, j) in pairs {
            uf.union(a.ends[i], b.ends[j] + off);
        }
        let raw_ends = ends.map(|f| match f {
            From::A(i) => a.ends[i],
            From::B(i) => b.ends[i] + off,
        });
        let mut crossings: Vec<[usize; 4]> = a.crossings.clone();
        crossings.extend(b.crossings.iter().map(|c| c.map(|e| e + off)));
        let mut used = vec![false; total];
        for c in &crossings {
            for &e in c {
                used[uf.find(e)] = true;
            }
        }
        for &e in &raw_ends {
            used[uf.find(e)] = true;
        }
        // Classes touching nothing are closed loops made of end arcs.
        let mut id = vec![usize::MAX; total];
        let mut next = 0;
        let mut new_loops = 0;
        for e in 0..total {
            if uf.find(e) == e {
                if used[e] {
                    id[e] = next;
                    next += 1;
                } else {
                    new_loops += 1;
                }
            }
        }
        let mut relabel = |e: usize| id[uf.find(e)];
        Tangle {
            crossings: crossings.iter().map(|c| c.map(&mut relabel)).collect(),
            ends: raw_ends.map(&mut relabel),
            loops: a.loops + b.loops + new_loops,
            n_edges: next,
        }
    }

    /// Horizontal sum: `self` on the left.
    pub fn sum(&self, other: &Tangle) -> Tangle {
        Tangle::glue(self, other, &[(NE, NW), (SE, SW)], [From::A(NW), From::B(NE), From::B(SE), From::A(SW)])
    }

    /// Vertical product: `self` on top.
    pub fn product(&self, other: &Tangle) -> Tangle {
        Tangle::glue(self, other, &[(SW, NW), (SE, NE)], [From::A(NW), From::A(NE), From::B(SE), From::B(SW)])
    }

    /// Quarter turn counterclockwise in the plane.
    pub fn rot(&self) -> Tangle {
        let e = self.ends;
        Tangle { ends: [e[NE], e[SE], e[SW], e[NW]], ..self.clone() }
    }

    /// Every crossing changed.
    pub fn mirror(&self) -> Tangle {
        Tangle { crossings: self.crossings.iter().map(|c| [c[1], c[2], c[3], c[0]]).collect(), ..self.clone() }
    }

    /// The tangle with reciprocal fraction.
    pub fn inv(&self) -> Tangle {
        self.rot().mirror()
    }

    /// Reflection in a line of the page combined with a crossing change.
    fn flip(&self, ends: [usize; 4]) -> Tangle {
        Tangle { crossings: self.crossings.iter().map(|c| [c[3], c[2], c[1], c[0]]).collect(), ends, ..self.clone() }
    }

    /// Half turn about the vertical axis of the page.
    pub fn rot_vertical(&self) -> Tangle {
        let e = self.ends;
        self.flip([e[NE], e[NW], e[SW], e[SE]])
    }

    /// Half turn about the horizontal axis of the page.
    pub fn rot_horizontal(&self) -> Tangle {
        let e = self.ends;
        self.flip([e[SW], e[SE], e[NE], e[NW]])
    }

    /// Half turn in the plane of the page.
    pub fn rot_planar(&self) -> Tangle {
        let e = self.ends;
        Tangle { ends: [e[SE], e[SW], e[NW], e[NE]], ..self.clone() }
    }

    fn close(&self, a: (usize, usize), b: (usize, usize)) -> Result<PDCode, DiagramError> {
        let mut uf = UnionFind::new(self.n_edges);
        uf.union(self.ends[a.0], self.ends[a.1]);
        uf.union(self.ends[b.0], self.ends[b.1]);
        let geo: Vec<[usize; 4]> = self.crossings.iter().map(|c| c.map(|e| uf.find(e))).collect();
        let mut used = vec![false; self.n_edges];
        for c in &geo {
            for &e in c {
                used[e] = true;
            }
        }
        let closed = (0..self.n_edges).filter(|&e| uf.find(e) == e && !used[e]).count();
        let (pd, _) = PDCode::from_geometry(&geo, self.loops + closed, None, &|_| None)?;
        Ok(pd)
    }

    /// Numerator closure: joins NW–NE and SW–SE.
    pub fn numerator(&self) -> Result<PDCode, DiagramError> {
        self.close((NW, NE), (SW, SE))
    }

    /// Denominator closure: joins NW–SW and NE–SE.
    pub fn denominator(&self) -> Result<PDCode, DiagramError> {
        self.close((NW, SW), (NE, SE))
    }

    /// Same tangle with edges renumbered by first appearance (ends, then
    /// crossings), for structural comparison.
    pub fn canonical(&self) -> Tangle {
        let mut id = vec![usize::MAX; self.n_edges];
        let mut next = 0;
        let order = self.ends.iter().chain(self.crossings.iter().flatten());
        for &e in order {
            if id[e] == usize::MAX {
                id[e] = next;
                next += 1;
            }
        }
        Tangle {
            crossings: self.crossings.iter().map(|c| c.map(|e| id[e])).collect(),
            ends: self.ends.map(|e| id[e]),
            ..self.clone()
        }
    }

    /// Endpoint pairing ignoring closed components: `0` for NW–NE,
    /// `1` for NW–SE, `∞` (returned as `None`) for NW–SW.
    pub fn connectivity(&self) -> Option<u8> {
        // Follow strands: ends connect through crossings straight across.
        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n_edges];
        for (c, slots) in self.crossings.iter().enumerate() {
            for (s, &e) in slots.iter().enumerate() {
                occ[e].push((c, s));
            }
        }
        let mut e = self.ends[NW];
        let mut came: Option<(usize, usize)> = None;
        loop {
            let next = occ[e].iter().copied().find(|d| Some(*d) != came);
            match next {
                None => break,
                Some((c, s)) => {
                    let out = (c, (s + 2) % 4);
                    e = self.crossings[c][out.1];
                    came = Some(out);
                }
            }
        }
        let pos = (1..4).find(|&i| self.ends[i] == e).expect("arc ends on the boundary");
        match pos {
            NE => Some(0),
            SE => Some(1),
            _ => None,
        }
    }
}

/// For `A = [p/q] + [r/s]`, returns `c = ps + qr` and `d = vs + ur` where
/// `pu - qv = 1`.
pub fn closure_fraction(p: i64, q: i64, r: i64, s: i64) -> Result<(i64, i64), DiagramError> {
    if p.gcd(&q) != 1 || r.gcd(&s) != 1 {
        return Err(DiagramError::Params("fractions must be reduced".into()));
    }
    let eg = p.extended_gcd(&q);
    // p x + q y = ±1, so u = ±x and v = ∓y.
    let sign = eg.gcd.signum();
    let (u, v) = (sign * eg.x, -sign * eg.y);
    debug_assert_eq!(p * u - q * v, 1);
    Ok((p * s + q * r, v * s + u * r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerator_of_zero_is_two_component_unlink() {
        let n = Tangle::zero().numerator().unwrap();
        assert_eq!(n.n_components(), 2);
        assert_eq!(n.n_crossings(), 0);
        assert_eq!(Tangle::zero().denominator().unwrap().n_components(), 1);
        assert_eq!(Tangle::infinity().numerator().unwrap().n_components(), 1);
    }

    #[test]
    fn quarter_turn_of_one_is_minus_one() {
        assert_eq!(Tangle::one().rot().canonical(), Tangle::one().mirror().canonical());
        assert_eq!(Tangle::one().rot().rot().rot().rot(), Tangle::one());
    }

    #[test]
    fn rational_crossing_counts() {
        for (p, q, n) in [(1, 2, 2), (-1, 3, 3), (2, 3, 3), (-3, 5, 4), (0, 1, 0), (7, 1, 7)] {
            assert_eq!(Tangle::rational(p, q).unwrap().n_crossings(), n, "{p}/{q}");
        }
        assert!(Tangle::rational(2, 4).is_err());
    }

    #[test]
    fn connectivity_types() {
        assert_eq!(Tangle::zero().connectivity(), Some(0));
        assert_eq!(Tangle::infinity().connectivity(), None);
        assert_eq!(Tangle::one().connectivity(), Some(1));
        assert_eq!(Tangle::integer(2).connectivity(), Some(0));
        assert_eq!(Tangle::vertical(2).connectivity(), None);
    }

    #[test]
    fn twist_closures_have_expected_components() {
        // N([n]) is the (2, n) torus link.
        for n in 1..6i64 {
            let pd = Tangle::integer(n).numerator().unwrap();
            assert_eq!(pd.n_components(), if n % 2 == 0 { 2 } else { 1 });
            assert_eq!(pd.writhe().abs(), n);
        }
        // Vertical twists close to an unknot diagram.
        assert_eq!(Tangle::vertical(3).numerator().unwrap().n_components(), 1);
    }

    #[test]
    fn sums_and_products_stay_planar() {
        let a = Tangle::rational(-3, 5).unwrap();
        let b = Tangle::rational(2, 3).unwrap();
        for t in [a.sum(&b), a.product(&b), a.rot_vertical().sum(&b), a.rot_horizontal().product(&b), a.rot_planar()] {
            assert!(t.numerator().is_ok());
            assert!(t.denominator().is_ok());
        }
    }

    #[test]
    fn sum_of_two_vertical_arcs_traps_a_loop() {
        let t = Tangle::infinity().sum(&Tangle::infinity());
        assert_eq!(t.loops(), 1);
    }

    #[test]
    fn rotations_compose() {
        let t = Tangle::rational(-3, 5).unwrap().sum(&Tangle::one());
        assert_eq!(t.rot_vertical().rot_horizontal(), t.rot_planar());
        assert_eq!(t.rot_vertical().rot_vertical(), t);
    }

    #[test]
    fn closure_fraction_matches_bezout_definition() {
        assert_eq!(closure_fraction(-1, 3, 1, 2).unwrap().0, 1);
        assert_eq!(closure_fraction(-3, 5, 1, 2).unwrap().0, -1);
        assert_eq!(closure_fraction(2, 3, -2, 3).unwrap().0, 0);
        assert!(closure_fraction(2, 4, 1, 1).is_err());
    }
}
