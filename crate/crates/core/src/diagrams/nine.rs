//! The nine links obtained from two tangles joined by two crossed bands.
//!
//! `T1` sits on the left and `T2` on the right. The top band joins the top
//! ends (outer strand NW(T1)–NE(T2), inner strand NE(T1)–NW(T2)) and carries
//! the first extra crossing; the bottom band joins the bottom ends the same
//! way and carries the second. Each band crossing is drawn so that its
//! 0-smoothing cuts the band into two caps and its 1-smoothing leaves two
//! parallel strands. So `L(0,0) = N(T1) ⊔ N(T2)` and `L(1,1) = N(T1 + T2)`.

use crate::diagrams::tangle::{Tangle, NE, NW, SE, SW};
use crate::diagrams::{CrossingStats, DiagramError, PDCode};

/// How a band crossing is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Band {
    /// Cut into two caps.
    Zero,
    /// Two parallel strands.
    One,
    /// The crossing is kept.
    Crossed,
}

impl Band {
    pub const ALL: [Band; 3] = [Band::Crossed, Band::Zero, Band::One];

    fn index(self) -> usize {
        match self {
            Band::Crossed => 0,
            Band::Zero => 1,
            Band::One => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Band::Crossed => "inf",
            Band::Zero => "0",
            Band::One => "1",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NineFamily {
    links: [[PDCode; 3]; 3],
    /// Index of the top-band crossing in the fully crossed diagram.
    pub top: usize,
    /// Index of the bottom-band crossing in the fully crossed diagram.
    pub bottom: usize,
}

impl NineFamily {
    /// The link with the top band treated as `a` and the bottom as `b`.
    pub fn get(&self, a: Band, b: Band) -> &PDCode {
        &self.links[a.index()][b.index()]
    }

    /// Crossings resolved to reach `(a, b)` from the fully crossed diagram.
    pub fn fixed(&self, a: Band, b: Band) -> Vec<(usize, u8)> {
        fixed_for(self.top, self.bottom, a, b)
    }
}

fn fixed_for(top: usize, bottom: usize, a: Band, b: Band) -> Vec<(usize, u8)> {
    let mut f = Vec::new();
    for (band, c) in [(a, top), (b, bottom)] {
        match band {
            Band::Zero => f.push((c, 0)),
            Band::One => f.push((c, 1)),
            Band::Crossed => {}
        }
    }
    f
}

/// Fully crossed diagram; band crossings come last (top, then bottom).
pub fn crossed_diagram(t1: &Tangle, t2: &Tangle) -> Result<PDCode, DiagramError> {
    let off = t1.n_edges();
    let a = t1.ends();
    let b = t2.ends().map(|e| e + off);
    let mut geo: Vec<[usize; 4]> = t1.crossings().to_vec();
    geo.extend(t2.crossings().iter().map(|c| c.map(|e| e + off)));
    // Counterclockwise from the outer-left strand; under strand NW(T1)–NW(T2).
    geo.push([a[NW], a[NE], b[NW], b[NE]]);
    // Counterclockwise from the inner-left strand; under strand SE(T1)–SE(T2).
    geo.push([a[SE], a[SW], b[SE], b[SW]]);
    let (pd, _) = PDCode::from_geometry(&geo, t1.loops() + t2.loops(), None, &|_| None)?;
    Ok(pd)
}

fn stats_after(pd: &PDCode, mask: usize) -> CrossingStats {
    reversed(pd, mask).crossing_signs()
}

fn reversed(pd: &PDCode, mask: usize) -> PDCode {
    let comps: Vec<usize> = (0..pd.components().len()).filter(|i| mask >> i & 1 == 1).collect();
    pd.reverse(&comps)
}

fn masks(pd: &PDCode) -> std::ops::Range<usize> {
    0..1usize << pd.components().len()
}

/// Builds all nine links, oriented so that the three links `(1,0)`, `(0,1)`,
/// `(0,0)` share their crossing-sign counts and so do `(1,∞)` and `(∞,1)`.
pub fn nine_family(t1: &Tangle, t2: &Tangle) -> Result<NineFamily, DiagramError> {
    let base = crossed_diagram(t1, t2)?;
    let top = t1.n_crossings() + t2.n_crossings();
    let bottom = top + 1;
    let mut links: [[PDCode; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| PDCode::unlink(0)));
    for a in Band::ALL {
        for b in Band::ALL {
            links[a.index()][b.index()] = base.resolve_many(&fixed_for(top, bottom, a, b))?;
        }
    }
    let (z, o, x) = (Band::Zero.index(), Band::One.index(), Band::Crossed.index());

    let l00 = links[z][z].clone();
    let l10 = links[o][z].clone();
    let l01 = links[z][o].clone();
    let mut found = None;
    'outer: for m00 in masks(&l00) {
        let target = stats_after(&l00, m00);
        let m10 = masks(&l10).find(|&m| stats_after(&l10, m) == target);
        let m01 = masks(&l01).find(|&m| stats_after(&l01, m) == target);
        if let (Some(m10), Some(m01)) = (m10, m01) {
            found = Some((m00, m10, m01));
            break 'outer;
        }
    }
    let (m00, m10, m01) = found
        .ok_or_else(|| DiagramError::Params("no orientation of L(0,0), L(1,0), L(0,1) has equal sign counts".into()))?;
    links[z][z] = reversed(&l00, m00);
    links[o][z] = reversed(&l10, m10);
    links[z][o] = reversed(&l01, m01);

    let l1x = links[o][x].clone();
    let lx1 = links[x][o].clone();
    let mut found = None;
    'outer2: for m1 in masks(&l1x) {
        let target = stats_after(&l1x, m1);
        if let Some(m2) = masks(&lx1).find(|&m| stats_after(&lx1, m) == target) {
            found = Some((m1, m2));
            break 'outer2;
        }
    }
    let (m1, m2) =
        found.ok_or_else(|| DiagramError::Params("no orientation of the mutant pair has equal sign counts".into()))?;
    links[o][x] = reversed(&l1x, m1);
    links[x][o] = reversed(&lx1, m2);
    Ok(NineFamily { links, top, bottom })
}

/// Complement of `kt_tangle(r)` for the band construction: with it,
/// `L(1,∞)` is `KT_{r,n}` up to one Reidemeister II move and `L(∞,1)` is
/// the mutant `C_{r,n}` after a flype.
pub fn kt_band_complement(r: i64, n: i64) -> Result<Tangle, DiagramError> {
    Ok(crate::diagrams::families::kt_complement(r, n)?.product(&Tangle::integer(1)))
}

/// Moves an integral annulus of `k` half twists across the pair: returns
/// `(T1 + [k], [-k] + T2)`. The sum of the two is the same link up to
/// Reidemeister II moves, and `N(T1 + [k])` is the chosen rational closure.
/// Only integral closures are supported.
pub fn insert_closure_annulus(
    t1: &Tangle,
    t2: &Tangle,
    fraction: (i64, i64),
) -> Result<(Tangle, Tangle), DiagramError> {
    let (p, q) = fraction;
    if q.abs() != 1 {
        return Err(DiagramError::Params(format!("closure {p}/{q}: only integral annuli are supported")));
    }
    let k = p * q.signum();
    Ok((t1.sum(&Tangle::integer(k)), Tangle::integer(-k).sum(t2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::families::{kt_tangle, sample_tangle};

    fn check_sign_equalities(f: &NineFamily) {
        use Band::*;
        let s = |a, b| f.get(a, b).crossing_signs();
        assert_eq!(s(One, Zero), s(Zero, Zero));
        assert_eq!(s(Zero, One), s(Zero, Zero));
        assert_eq!(s(One, Crossed), s(Crossed, One));
    }

    #[test]
    fn trivial_tangles_give_unlinks_of_one_or_two_components() {
        // The trivial tangle whose numerator closure is a single circle.
        let f = nine_family(&Tangle::infinity(), &Tangle::infinity()).unwrap();
        for a in Band::ALL {
            for b in Band::ALL {
                let n = f.get(a, b).n_components();
                assert!(n == 1 || n == 2, "({a:?},{b:?}) has {n}");
            }
        }
        assert_eq!(f.get(Band::Zero, Band::Zero).n_components(), 2);
        let g = nine_family(&Tangle::zero(), &Tangle::zero()).unwrap();
        assert_eq!(g.get(Band::Zero, Band::Zero).n_components(), 4);
        check_sign_equalities(&f);
    }

    #[test]
    fn extreme_corners_are_split_union_and_sum() {
        let t1 = sample_tangle(1).unwrap();
        let t2 = Tangle::rational(2, 5).unwrap();
        let f = nine_family(&t1, &t2).unwrap();
        let l00 = f.get(Band::Zero, Band::Zero);
        let split = t1.numerator().unwrap().disjoint_union(&t2.numerator().unwrap());
        assert_eq!(l00.n_components(), split.n_components());
        assert_eq!(l00.n_crossings(), split.n_crossings());
        let l11 = f.get(Band::One, Band::One);
        assert_eq!(l11.n_crossings(), t1.sum(&t2).numerator().unwrap().n_crossings());
        check_sign_equalities(&f);
    }

    #[test]
    fn kt_pair_is_a_pair_of_knots() {
        let f = nine_family(&kt_tangle(2).unwrap(), &kt_band_complement(2, 1).unwrap()).unwrap();
        assert_eq!(f.get(Band::One, Band::Crossed).n_components(), 1);
        assert_eq!(f.get(Band::Crossed, Band::One).n_components(), 1);
        check_sign_equalities(&f);
    }

    #[test]
    fn annulus_bookkeeping() {
        let t = Tangle::rational(2, 3).unwrap();
        let (a, b) = insert_closure_annulus(&t, &Tangle::zero(), (0, 1)).unwrap();
        assert_eq!(a.n_crossings(), t.n_crossings());
        assert_eq!(b.n_crossings(), 0);
        let (u, _) = insert_closure_annulus(&Tangle::zero(), &Tangle::zero(), (1, 1)).unwrap();
        assert_eq!(u.numerator().unwrap().n_components(), 1);
        assert!(insert_closure_annulus(&t, &t, (1, 2)).is_err());
    }
}
