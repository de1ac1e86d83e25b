//! Basepoint operators on tilde grid homology.
//!
//! `Z_i` counts empty rectangles containing `X_i` and no other marking,
//! `W_i` those containing only `O_i`. On homology they satisfy the
//! relations of the basepoint algebra `Ω_ν` (see [`clifford`]).

pub mod clifford;

use serde::Serialize;

use crate::algebra::{
    induced_matrices, rank, ranks_by_source_grading, BigradedDims, Field, Grading, Modp, SparseMatrix,
};
use crate::grid::{GridComplex, GridDiagram, GridError, MarkingId};

pub use clifford::{decompose, verify_clifford, CliffordElement, CliffordReport, Decomposition, OmegaAlgebra};

/// Operator matrices on a fixed homology basis.
#[derive(Clone, Debug)]
pub struct HomologyOperators {
    pub nu: Vec<usize>,
    /// Gradings `(2M, 2A)` of the homology basis.
    pub gradings: Vec<Grading>,
    pub z: Vec<SparseMatrix<Modp>>,
    pub w: Vec<SparseMatrix<Modp>>,
}

/// Induced action of every marking map.
pub fn homology_operators(c: &GridComplex) -> Result<HomologyOperators, GridError> {
    let n = c.grid().n();
    let h = c.model();
    let markings: Vec<MarkingId> = (0..n).map(MarkingId::X).chain((0..n).map(MarkingId::O)).collect();
    let maps = markings.iter().map(|m| c.marking_map(*m)).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&SparseMatrix<Modp>> = maps.iter().map(|f| f.matrix()).collect();
    let mats = induced_matrices(&refs, c.gradings(), c.gradings(), h, h);
    let (z, w) = mats.split_at(n);
    Ok(HomologyOperators {
        nu: c.grid().successor(),
        gradings: h.basis_gradings().to_vec(),
        z: z.to_vec(),
        w: w.to_vec(),
    })
}

/// Outcome of a batch of matrix identities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, cond: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !cond {
            self.failures.push(what());
        }
    }
}

fn anti(a: &SparseMatrix<Modp>, b: &SparseMatrix<Modp>) -> SparseMatrix<Modp> {
    a.mul(b).add(&b.mul(a))
}

fn combination(ms: &[SparseMatrix<Modp>], mask: u32, dim: usize) -> SparseMatrix<Modp> {
    let mut acc = SparseMatrix::zero(dim, dim, Field::F2);
    for (i, m) in ms.iter().enumerate() {
        if mask >> i & 1 == 1 {
            acc = acc.add(m);
        }
    }
    acc
}

impl HomologyOperators {
    pub fn dim(&self) -> usize {
        self.gradings.len()
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn dims(&self) -> BigradedDims {
        BigradedDims::from_half_pairs(self.gradings.iter().map(|g| (*g, 1)))
    }

    /// `Σ_{i∈mask} z_i`.
    pub fn z_sum(&self, mask: u32) -> SparseMatrix<Modp> {
        combination(&self.z, mask, self.dim())
    }

    /// `Σ_{i∈mask} w_i`.
    pub fn w_sum(&self, mask: u32) -> SparseMatrix<Modp> {
        combination(&self.w, mask, self.dim())
    }

    /// Every defining relation of `Ω_ν` as a matrix identity.
    pub fn check_relations(&self) -> RelationReport {
        let n = self.n();
        let dim = self.dim();
        let id = SparseMatrix::<Modp>::identity(dim, Field::F2);
        let zero = SparseMatrix::<Modp>::zero(dim, dim, Field::F2);
        let alg = OmegaAlgebra::new(&self.nu);
        let mut rep = RelationReport::default();
        for i in 0..n {
            rep.expect(self.z[i].mul(&self.z[i]).is_zero(), || format!("z{i}² ≠ 0"));
            rep.expect(self.w[i].mul(&self.w[i]).is_zero(), || format!("w{i}² ≠ 0"));
            for j in 0..n {
                if i < j {
                    rep.expect(anti(&self.z[i], &self.z[j]).is_zero(), || format!("[z{i}, z{j}] ≠ 0"));
                    rep.expect(anti(&self.w[i], &self.w[j]).is_zero(), || format!("[w{i}, w{j}] ≠ 0"));
                }
                let want = if alg.bracket(i, j) { &id } else { &zero };
                rep.expect(&anti(&self.z[i], &self.w[j]) == want, || {
                    format!("[z{i}, w{j}] ≠ {}", if alg.bracket(i, j) { "Id" } else { "0" })
                });
            }
            for (name, m, deg) in [("z", &self.z[i], -2), ("w", &self.w[i], 2)] {
                let homogeneous = m.columns().iter().enumerate().all(|(c, col)| {
                    col.iter().all(|(r, _)| {
                        let (s, t) = (self.gradings[c], self.gradings[*r]);
                        t.0 - s.0 == deg && t.1 - s.1 == deg
                    })
                });
                rep.expect(homogeneous, || format!("{name}{i} is not homogeneous"));
            }
        }
        rep
    }

    /// Projection onto `Π_k ω_k ζ_k H` for the conjugate pairs of the
    /// decomposition of `ν`: the hat summand at its own gradings.
    pub fn hat_projection(&self) -> (SparseMatrix<Modp>, Decomposition) {
        let d = decompose(&self.nu);
        let mut p = SparseMatrix::identity(self.dim(), Field::F2);
        for k in 0..d.pairs {
            let wz = self.w_sum(d.omega[k]).mul(&self.z_sum(d.zeta[k]));
            p = wz.mul(&p);
        }
        (p, d)
    }

    /// Dimensions of the image of a degree `(0, 0)` operator.
    pub fn image_dims(&self, m: &SparseMatrix<Modp>) -> BigradedDims {
        ranks_by_source_grading(m, &self.gradings)
    }
}

/// The splitting `H = ωζH ⊕ ζωH` for one conjugate pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub dim: usize,
    pub rank_wz: usize,
    pub rank_zw: usize,
    pub idempotent: bool,
    pub orthogonal: bool,
    pub complementary: bool,
    /// `z` and `w` restrict to mutually inverse maps between the summands.
    pub inverse_pair: bool,
    /// `ωζH = ker ω` and `ζωH = ker ζ`.
    pub kernels: bool,
}

impl SplitReport {
    pub fn ok(&self) -> bool {
        self.idempotent
            && self.orthogonal
            && self.complementary
            && self.inverse_pair
            && self.kernels
            && 2 * self.rank_wz == self.dim
            && 2 * self.rank_zw == self.dim
    }
}

/// Splits a module by a conjugate pair `z`, `w` with `zw + wz = Id`.
pub fn split_by_projection(z: &SparseMatrix<Modp>, w: &SparseMatrix<Modp>) -> Result<SplitReport, GridError> {
    let dim = z.cols();
    let id = SparseMatrix::<Modp>::identity(dim, Field::F2);
    if anti(z, w) != id {
        return Err(GridError::Relation("not a conjugate pair: zw + wz ≠ Id".into()));
    }
    let p = w.mul(z);
    let q = z.mul(w);
    let (rank_wz, rank_zw) = (rank(&p), rank(&q));
    Ok(SplitReport {
        dim,
        rank_wz,
        rank_zw,
        idempotent: p.mul(&p) == p && q.mul(&q) == q,
        orthogonal: p.mul(&q).is_zero() && q.mul(&p).is_zero(),
        complementary: p.add(&q) == id,
        inverse_pair: w.mul(&z.mul(&p)) == p && z.mul(&w.mul(&q)) == q && rank(&z.mul(&p)) == rank_wz,
        kernels: w.mul(&p).is_zero() && z.mul(&q).is_zero() && rank_wz == dim - rank(w) && rank_zw == dim - rank(z),
    })
}

/// Whether every degree-one central element acts as zero on the hat
/// summand (expected for unlinks).
pub fn central_vanishing(ops: &HomologyOperators) -> RelationReport {
    let (p, _) = ops.hat_projection();
    let alg = OmegaAlgebra::new(&ops.nu);
    let mut rep = RelationReport::default();
    for (k, (a, b)) in alg.center().into_iter().enumerate() {
        rep.expect(ops.z_sum(a).mul(&p).is_zero(), || format!("ζ{k} acts nontrivially on hat"));
        rep.expect(ops.w_sum(b).mul(&p).is_zero(), || format!("ω{k} acts nontrivially on hat"));
    }
    rep
}

/// Ranks of the central operators `ζ_c`, `ω_c` on the hat summand, one
/// pair per component (in the order of [`GridDiagram::components`]).
pub fn central_ranks_on_hat(ops: &HomologyOperators) -> Vec<(usize, usize)> {
    let (p, _) = ops.hat_projection();
    OmegaAlgebra::new(&ops.nu)
        .center()
        .into_iter()
        .map(|(a, b)| (rank(&ops.z_sum(a).mul(&p)), rank(&ops.w_sum(b).mul(&p))))
        .collect()
}

/// Outcome of the disjoint-union and connected-sum comparisons.
#[derive(Clone, Debug, Serialize)]
pub struct KunnethReport {
    pub hat_1: BigradedDims,
    pub hat_2: BigradedDims,
    pub hat_union: BigradedDims,
    pub hat_sum: BigradedDims,
    /// `hat(L1 ⊔ L2) = hat(L1) ⊗ hat(L2) ⊗ U`.
    pub union_ok: bool,
    /// `hat(L1 # L2) = hat(L1) ⊗ hat(L2)`.
    pub sum_ok: bool,
    /// Central operator ranks on the union match the tensor prediction.
    pub operators_ok: bool,
}

impl KunnethReport {
    pub fn ok(&self) -> bool {
        self.union_ok && self.sum_ok && self.operators_ok
    }
}

/// `U`: one generator at `(0, 0)` and one at `(-1, 0)`.
pub fn u_dims() -> BigradedDims {
    BigradedDims::from_int_pairs(&[((0, 0), 1), ((-1, 0), 1)])
}

/// Compares hat groups and central operator ranks of `L1`, `L2`, their
/// union and their connected sum.
pub fn verify_kunneth(l1: &GridDiagram, l2: &GridDiagram, max_n: usize) -> Result<KunnethReport, GridError> {
    let union = l1.disjoint_union(l2);
    let sum = l1.connected_sum(l2)?;
    let run = |g: &GridDiagram| -> Result<(BigradedDims, Vec<(usize, usize)>), GridError> {
        let c = GridComplex::new(g, max_n)?;
        let ops = homology_operators(&c)?;
        let (p, _) = ops.hat_projection();
        Ok((ops.image_dims(&p), central_ranks_on_hat(&ops)))
    };
    let (hat_1, r1) = run(l1)?;
    let (hat_2, r2) = run(l2)?;
    let (hat_union, ru) = run(&union)?;
    let (hat_sum, _) = run(&sum)?;
    // Components of the union: those of L1 then those of L2 (rows of L1
    // come first, so component order is preserved).
    let scale_1 = hat_2.total() * 2;
    let scale_2 = hat_1.total() * 2;
    let predicted: Vec<(usize, usize)> = r1
        .iter()
        .map(|&(a, b)| (a * scale_1, b * scale_1))
        .chain(r2.iter().map(|&(a, b)| (a * scale_2, b * scale_2)))
        .collect();
    let union_pred = hat_1.tensor(&hat_2).tensor(&u_dims());
    Ok(KunnethReport {
        union_ok: hat_union == union_pred,
        sum_ok: hat_sum == hat_1.tensor(&hat_2),
        operators_ok: ru == predicted,
        hat_1,
        hat_2,
        hat_union,
        hat_sum,
    })
}
