//! The basepoint algebra over F2: generators `z_1..z_n`, `w_1..w_n` with
//! `z_i² = w_i² = 0`, all `z`s commuting, all `w`s commuting, and
//! `z_i w_j + w_j z_i = δ_{i,j} + δ_{ν(i),j}`.
//!
//! Elements are sums of normal-ordered monomials `z_S w_T`, stored as pairs
//! of bitmasks. A degree-one element is a pair `(a, b)` of masks: `a`
//! selects `z`s and `b` selects `w`s.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::grid::cycles;

/// A normal-ordered monomial `z_S w_T`.
pub type Monomial = (u32, u32);

/// An F2 combination of normal-ordered monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CliffordElement {
    terms: BTreeSet<Monomial>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial((0, 0))
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        CliffordElement { terms }
    }

    /// `Σ_{i∈a} z_i + Σ_{j∈b} w_j`.
    pub fn linear(a: u32, b: u32) -> Self {
        let mut e = Self::zero();
        for i in 0..32 {
            if a >> i & 1 == 1 {
                e.toggle((1 << i, 0));
            }
            if b >> i & 1 == 1 {
                e.toggle((0, 1 << i));
            }
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for m in &other.terms {
            out.toggle(*m);
        }
        out
    }
}

/// `Ω_ν` for a permutation `ν` of `0..n`.
#[derive(Clone, Debug)]
pub struct OmegaAlgebra {
    n: usize,
    nu: Vec<usize>,
    /// `pairing[i]`: mask of `j` with `z_i w_j + w_j z_i = 1`.
    pairing: Vec<u32>,
}

fn parity(x: u32) -> bool {
    x.count_ones() % 2 == 1
}

impl OmegaAlgebra {
    pub fn new(nu: &[usize]) -> Self {
        let n = nu.len();
        assert!(n <= 16, "at most 16 basepoint pairs");
        let pairing = (0..n).map(|i| (1u32 << i) ^ (1u32 << nu[i])).collect();
        OmegaAlgebra { n, nu: nu.to_vec(), pairing }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    /// `z_i w_j + w_j z_i` as a scalar.
    pub fn bracket(&self, i: usize, j: usize) -> bool {
        self.pairing[i] >> j & 1 == 1
    }

    /// Scalar anticommutator of two degree-one elements `(a, b)`, `(c, d)`.
    pub fn pairing(&self, u: (u32, u32), v: (u32, u32)) -> bool {
        let mut s = false;
        for i in 0..self.n {
            if u.0 >> i & 1 == 1 {
                s ^= parity(self.pairing[i] & v.1);
            }
            if v.0 >> i & 1 == 1 {
                s ^= parity(self.pairing[i] & u.1);
            }
        }
        s
    }

    pub fn z(&self, i: usize) -> CliffordElement {
        CliffordElement::monomial((1 << i, 0))
    }

    pub fn w(&self, i: usize) -> CliffordElement {
        CliffordElement::monomial((0, 1 << i))
    }

    fn times_z(&self, e: &CliffordElement, i: usize) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for &(s, t) in &e.terms {
            // w_T z_i = z_i w_T + Σ_{t∈T} [z_i, w_t] w_{T∖t}
            if s >> i & 1 == 0 {
                out.toggle((s | 1 << i, t));
            }
            let mut hits = t & self.pairing[i];
            while hits != 0 {
                let b = hits.trailing_zeros();
                out.toggle((s, t & !(1 << b)));
                hits &= hits - 1;
            }
        }
        out
    }

    fn times_w(&self, e: &CliffordElement, j: usize) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for &(s, t) in &e.terms {
            if t >> j & 1 == 0 {
                out.toggle((s, t | 1 << j));
            }
        }
        out
    }

    /// Normal-form product.
    pub fn mul(&self, a: &CliffordElement, b: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for &(u, v) in &b.terms {
            let mut acc = a.clone();
            for i in 0..self.n {
                if u >> i & 1 == 1 {
                    acc = self.times_z(&acc, i);
                }
            }
            for j in 0..self.n {
                if v >> j & 1 == 1 {
                    acc = self.times_w(&acc, j);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// All `4^n` normal-ordered monomials.
    pub fn basis(&self) -> Vec<Monomial> {
        let k = 1u32 << self.n;
        (0..k).flat_map(|s| (0..k).map(move |t| (s, t))).collect()
    }

    /// `Q_ν(a, b) = Σ a_i b_i + Σ a_i b_{ν(i)}`, the scalar square of the
    /// degree-one element with `z`-part `a` and `w`-part `b`.
    pub fn quadratic_form(&self, a: u32, b: u32) -> bool {
        let mut s = parity(a & b);
        for i in 0..self.n {
            if a >> i & 1 == 1 && b >> self.nu[i] & 1 == 1 {
                s ^= true;
            }
        }
        s
    }

    /// The shift `z_i ↦ z_{ν(i)}`, `w_i ↦ w_{ν(i)}` on degree-one elements.
    pub fn shift(&self, v: (u32, u32)) -> (u32, u32) {
        let mut out = (0, 0);
        for i in 0..self.n {
            if v.0 >> i & 1 == 1 {
                out.0 |= 1 << self.nu[i];
            }
            if v.1 >> i & 1 == 1 {
                out.1 |= 1 << self.nu[i];
            }
        }
        out
    }

    /// Orbit sums `ζ_c = Σ_{i∈c} z_i` and `ω_c = Σ_{i∈c} w_i`, one pair per
    /// cycle of `ν`.
    pub fn center(&self) -> Vec<(u32, u32)> {
        cycles(&self.nu)
            .iter()
            .map(|c| {
                let m = c.iter().fold(0u32, |m, &i| m | 1 << i);
                (m, m)
            })
            .collect()
    }

    /// Whether a degree-one element anticommutes to zero with every
    /// generator.
    pub fn is_central_linear(&self, v: (u32, u32)) -> bool {
        (0..self.n).all(|i| !self.pairing(v, (1 << i, 0)) && !self.pairing(v, (0, 1 << i)))
    }

    /// Dimension of the center, by linear algebra on the full algebra.
    pub fn center_dimension(&self) -> usize {
        let basis = self.basis();
        let index: std::collections::HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let dim = basis.len();
        // Columns: basis elements; rows: coefficients of [b, g] for each
        // generator g.
        let gens: Vec<CliffordElement> = (0..self.n).flat_map(|i| [self.z(i), self.w(i)]).collect();
        let words = dim.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for g in &gens {
            let mut block = vec![vec![0u64; words]; dim];
            for (k, m) in basis.iter().enumerate() {
                let b = CliffordElement::monomial(*m);
                let c = self.mul(&b, g).add(&self.mul(g, &b));
                for t in c.terms() {
                    block[index[t]][k / 64] ^= 1 << (k % 64);
                }
            }
            rows.extend(block);
        }
        dim - bit_rank(rows)
    }
}

fn bit_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, |r| r.len());
    for col in 0..words * 64 {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in 0..rows.len() {
            if r != rank && rows[r][w] >> b & 1 == 1 {
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A change of generators splitting `Ω_ν` into `n - l` matrix factors and
/// `l` exterior factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// New `z`-type generators as masks over the `z_i`.
    pub zeta: Vec<u32>,
    /// New `w`-type generators as masks over the `w_i`.
    pub omega: Vec<u32>,
    /// Number of conjugate pairs: `zeta[k]`, `omega[k]` anticommute to 1
    /// for `k < pairs`; all other brackets vanish.
    pub pairs: usize,
}

/// Symplectic-style elimination of the bracket form. Pivots are searched
/// from the highest `z` index and the lowest `w` index.
pub fn decompose(nu: &[usize]) -> Decomposition {
    let alg = OmegaAlgebra::new(nu);
    let n = nu.len();
    let mut zs: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    let mut ws: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    let mut zeta = Vec::new();
    let mut omega = Vec::new();
    loop {
        let found = (0..zs.len())
            .rev()
            .find_map(|p| (0..ws.len()).find(|&q| alg.pairing((zs[p], 0), (0, ws[q]))).map(|q| (p, q)));
        let Some((p, q)) = found else { break };
        let e = zs.remove(p);
        let f = ws.remove(q);
        for z in zs.iter_mut() {
            if alg.pairing((*z, 0), (0, f)) {
                *z ^= e;
            }
        }
        for w in ws.iter_mut() {
            if alg.pairing((e, 0), (0, *w)) {
                *w ^= f;
            }
        }
        zeta.push(e);
        omega.push(f);
    }
    let pairs = zeta.len();
    zeta.extend(zs);
    omega.extend(ws);
    Decomposition { zeta, omega, pairs }
}

impl Decomposition {
    /// Checks every bracket among the new generators inside the algebra.
    pub fn verify(&self, nu: &[usize]) -> bool {
        let alg = OmegaAlgebra::new(nu);
        let n = nu.len();
        let z: Vec<CliffordElement> = self.zeta.iter().map(|&m| CliffordElement::linear(m, 0)).collect();
        let w: Vec<CliffordElement> = self.omega.iter().map(|&m| CliffordElement::linear(0, m)).collect();
        let anti = |a: &CliffordElement, b: &CliffordElement| alg.mul(a, b).add(&alg.mul(b, a));
        let one = CliffordElement::one();
        let zero = CliffordElement::zero();
        for i in 0..n {
            for j in 0..n {
                if anti(&z[i], &z[j]) != zero || anti(&w[i], &w[j]) != zero {
                    return false;
                }
                let want = if i == j && i < self.pairs { &one } else { &zero };
                if &anti(&z[i], &w[j]) != want {
                    return false;
                }
            }
        }
        // Both families must be bases.
        bit_rank(self.zeta.iter().map(|&m| vec![m as u64]).collect()) == n
            && bit_rank(self.omega.iter().map(|&m| vec![m as u64]).collect()) == n
    }
}

/// Structural checks of `Ω_ν` for one successor permutation.
#[derive(Clone, Debug, Serialize)]
pub struct CliffordReport {
    pub nu: Vec<usize>,
    pub components: usize,
    /// Number of normal-ordered monomials, expected `4^n`.
    pub dimension: usize,
    /// Exhaustive on basis triples; `None` when `n` is above the limit.
    pub associative: Option<bool>,
    /// Every target bracket of [`decompose`] holds.
    pub decomposition_ok: bool,
    /// Central degree-one elements are exactly the shift-fixed ones.
    pub center_is_fixed_space: bool,
    /// The center has dimension `4^l`.
    pub center_dimension: usize,
}

impl CliffordReport {
    pub fn ok(&self) -> bool {
        self.dimension == 1 << (2 * self.nu.len())
            && self.associative != Some(false)
            && self.decomposition_ok
            && self.center_is_fixed_space
            && self.center_dimension == 1 << (2 * self.components)
    }
}

/// Runs the checks, testing associativity only for `n <= assoc_limit`.
pub fn verify_clifford(nu: &[usize], assoc_limit: usize) -> CliffordReport {
    let alg = OmegaAlgebra::new(nu);
    let n = nu.len();
    let basis = alg.basis();
    let associative = (n <= assoc_limit).then(|| {
        let els: Vec<CliffordElement> = basis.iter().map(|m| CliffordElement::monomial(*m)).collect();
        els.iter().all(|a| {
            els.iter().all(|b| {
                let ab = alg.mul(a, b);
                els.iter().all(|c| alg.mul(&ab, c) == alg.mul(a, &alg.mul(b, c)))
            })
        })
    });
    let center_is_fixed_space =
        (0..1u32 << n).all(|a| (0..1u32 << n).all(|b| alg.is_central_linear((a, b)) == (alg.shift((a, b)) == (a, b))));
    CliffordReport {
        nu: nu.to_vec(),
        components: cycles(nu).len(),
        dimension: basis.len(),
        associative,
        decomposition_ok: decompose(nu).verify(nu),
        center_is_fixed_space,
        center_dimension: alg.center_dimension(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut q: Vec<usize> = p.iter().map(|&v| if v >= k { v + 1 } else { v }).collect();
                q.insert(0, k);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn one_is_unit_and_squares_vanish() {
        let alg = OmegaAlgebra::new(&[1, 0]);
        let a = alg.mul(&alg.z(0), &alg.w(1)).add(&alg.w(0));
        assert_eq!(alg.mul(&CliffordElement::one(), &a), a);
        assert_eq!(alg.mul(&a, &CliffordElement::one()), a);
        assert!(alg.mul(&alg.z(0), &alg.z(0)).is_zero());
        assert!(alg.mul(&alg.w(1), &alg.w(1)).is_zero());
    }

    #[test]
    fn wz_is_idempotent_only_for_conjugate_pairs() {
        // ν = id: the bracket vanishes and (w z)² = 0.
        let alg = OmegaAlgebra::new(&[0]);
        let wz = alg.mul(&alg.w(0), &alg.z(0));
        assert!(alg.mul(&wz, &wz).is_zero());
        // ν = (12): z_2 and w_1 are conjugate and w_1 z_2 is idempotent.
        let alg = OmegaAlgebra::new(&[1, 0]);
        let wz = alg.mul(&alg.w(0), &alg.z(1));
        assert_eq!(alg.mul(&wz, &wz), wz);
    }

    #[test]
    fn transposition_decomposes_with_a_conjugate_pair() {
        let d = decompose(&[1, 0]);
        assert_eq!(d.pairs, 1);
        assert_eq!((d.zeta[0], d.omega[0]), (0b10, 0b01));
        assert_eq!((d.zeta[1], d.omega[1]), (0b11, 0b11));
        assert!(d.verify(&[1, 0]));
    }

    #[test]
    fn identity_decomposes_trivially() {
        let d = decompose(&[0, 1, 2]);
        assert_eq!(d.pairs, 0);
        assert_eq!(d.zeta, vec![1, 2, 4]);
    }

    #[test]
    fn decomposition_all_permutations_up_to_four() {
        for n in 1..=4 {
            for nu in perms(n) {
                let d = decompose(&nu);
                assert_eq!(d.pairs, n - cycles(&nu).len(), "{nu:?}");
                assert!(d.verify(&nu), "{nu:?}");
            }
        }
    }

    #[test]
    fn associativity_and_dimension_exhaustive() {
        for n in 1..=2 {
            for nu in perms(n) {
                let alg = OmegaAlgebra::new(&nu);
                let basis = alg.basis();
                assert_eq!(basis.len(), 1 << (2 * n));
                let els: Vec<CliffordElement> = basis.iter().map(|m| CliffordElement::monomial(*m)).collect();
                for a in &els {
                    for b in &els {
                        let ab = alg.mul(a, b);
                        for c in &els {
                            assert_eq!(alg.mul(&ab, c), alg.mul(a, &alg.mul(b, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn squares_match_quadratic_form() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for nu in [vec![0, 1, 2, 3], vec![1, 2, 0, 3], vec![1, 0, 3, 2], vec![3, 0, 1, 2]] {
            let alg = OmegaAlgebra::new(&nu);
            for _ in 0..100 {
                let (a, b) = (rng.gen_range(0..16u32), rng.gen_range(0..16u32));
                let v = CliffordElement::linear(a, b);
                let sq = alg.mul(&v, &v);
                let want = if alg.quadratic_form(a, b) { CliffordElement::one() } else { CliffordElement::zero() };
                assert_eq!(sq, want);
            }
        }
    }

    #[test]
    fn center_is_shift_fixed_space() {
        for n in 1..=4 {
            for nu in perms(n) {
                let alg = OmegaAlgebra::new(&nu);
                for a in 0..1u32 << n {
                    for b in 0..1u32 << n {
                        assert_eq!(alg.is_central_linear((a, b)), alg.shift((a, b)) == (a, b));
                    }
                }
                for v in alg.center() {
                    assert!(alg.is_central_linear(v));
                }
            }
        }
    }

    #[test]
    fn transposition_center() {
        let alg = OmegaAlgebra::new(&[1, 0]);
        assert!(alg.is_central_linear((0b11, 0)));
        assert!(alg.is_central_linear((0, 0b11)));
        assert!(!alg.is_central_linear((0b01, 0)));
    }

    #[test]
    fn center_dimension_is_four_to_the_components() {
        for n in 1..=2 {
            for nu in perms(n) {
                let l = cycles(&nu).len();
                assert_eq!(OmegaAlgebra::new(&nu).center_dimension(), 1 << (2 * l), "{nu:?}");
            }
        }
    }

    #[test]
    fn report_on_a_three_cycle() {
        let r = verify_clifford(&[1, 2, 0], 3);
        assert_eq!(r.dimension, 64);
        assert_eq!(r.associative, Some(true));
        assert_eq!(r.center_dimension, 4);
        assert!(r.ok());
        assert_eq!(verify_clifford(&[1, 0, 2, 3], 3).associative, None);
    }
}
