//! Hat grid homology from tilde homology and the basepoint operators.
//!
//! Tilde homology is `hat ⊗ V^{⊗(n-l)}` with `V` spanned by gradings
//! `(0, 0)` and `(-1, -1)`. Each conjugate pair `ζ, ω` of basepoint
//! operators splits off one `V` factor, and `ωζ` projects onto its `(0, 0)`
//! line, so the image of the product of these projections is the hat group
//! at its own gradings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::BigradedDims;
use crate::basepoints::{homology_operators, HomologyOperators};
use crate::grid::{gh_tilde, Corner, GridComplex, GridDiagram, GridError};

#[derive(Clone, Debug, Serialize)]
pub struct HatReport {
    pub n: usize,
    pub components: usize,
    pub tilde: BigradedDims,
    pub hat: BigradedDims,
    /// `tilde = hat ⊗ V^{⊗(n-l)}` bigraded.
    pub tensor_identity: bool,
}

/// `V`: one generator at `(0, 0)` and one at `(-1, -1)`.
pub fn v_dims() -> BigradedDims {
    BigradedDims::from_int_pairs(&[((0, 0), 1), ((-1, -1), 1)])
}

/// `V^{⊗k}`.
pub fn v_power(k: usize) -> BigradedDims {
    let mut acc = BigradedDims::from_int_pairs(&[((0, 0), 1)]);
    for _ in 0..k {
        acc = acc.tensor(&v_dims());
    }
    acc
}

/// Hat dimensions from precomputed operators.
pub fn hat_from_operators(ops: &HomologyOperators) -> Result<BigradedDims, GridError> {
    let (p, d) = ops.hat_projection();
    let hat = ops.image_dims(&p);
    if hat.total() << d.pairs != ops.dim() {
        return Err(GridError::Relation(format!(
            "projection rank {} does not divide homology of dimension {} by 2^{}",
            hat.total(),
            ops.dim(),
            d.pairs
        )));
    }
    Ok(hat)
}

/// Hat grid homology of the grid behind `c`.
pub fn hat_extract(c: &GridComplex) -> Result<HatReport, GridError> {
    let ops = homology_operators(c)?;
    let hat = hat_from_operators(&ops)?;
    let g = c.grid();
    let k = g.n() - g.n_components();
    let tilde = ops.dims();
    Ok(HatReport {
        n: g.n(),
        components: g.n_components(),
        tensor_identity: hat.tensor(&v_power(k)) == tilde,
        tilde,
        hat,
    })
}

/// Tilde homology before and after one stabilization.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizationReport {
    pub row: usize,
    pub corner: Corner,
    pub before: BigradedDims,
    pub after: BigradedDims,
    /// `after = before ⊗ V`.
    pub ok: bool,
}

/// Stabilizes row 0 at each corner and compares tilde homology with
/// `before ⊗ V`. The stabilized grids must fit in `max_n`.
pub fn verify_stabilization(g: &GridDiagram, max_n: usize) -> Result<Vec<StabilizationReport>, GridError> {
    let before = gh_tilde(g, max_n)?;
    let expected = before.tensor(&v_dims());
    Corner::ALL
        .iter()
        .map(|&corner| {
            let after = gh_tilde(&g.stabilize(0, corner)?, max_n)?;
            Ok(StabilizationReport { row: 0, corner, ok: after == expected, before: before.clone(), after })
        })
        .collect()
}

/// `δ`-graded hat dims before and after reversing some components.
#[derive(Clone, Debug, Serialize)]
pub struct OrientationShiftReport {
    pub reversed: Vec<usize>,
    pub writhe_before: i64,
    pub writhe_after: i64,
    /// `2c` with `c = (wr - wr') / 4`.
    pub shift2: i32,
    /// Hat dims by `2δ`.
    pub before: BTreeMap<i32, usize>,
    pub after: BTreeMap<i32, usize>,
    /// `after` is `before` moved up by `c`.
    pub ok: bool,
}

/// Hat dims by `2δ`. `V` sits in `δ = 0`, so these are the tilde dims by
/// `δ` divided by `2^(n - l)`.
pub fn hat_delta_dims(g: &GridDiagram, max_n: usize) -> Result<BTreeMap<i32, usize>, GridError> {
    let scale = 1usize << (g.n() - g.n_components());
    Ok(gh_tilde(g, max_n)?.collapse_difference().into_iter().map(|(d, k)| (d, k / scale)).collect())
}

/// Reverses `components` and checks the `δ` shift `c = (wr - wr') / 4`.
pub fn verify_orientation_shift(
    g: &GridDiagram,
    components: &[usize],
    max_n: usize,
) -> Result<OrientationShiftReport, GridError> {
    let r = g.reverse(components)?;
    let (wb, wa) = (g.writhe(), r.writhe());
    let dw = wb - wa;
    if dw % 2 != 0 {
        return Err(GridError::Relation(format!("writhe change {dw} is odd")));
    }
    let shift2 = (dw / 2) as i32;
    let before = hat_delta_dims(g, max_n)?;
    let after = hat_delta_dims(&r, max_n)?;
    let moved: BTreeMap<i32, usize> = before.iter().map(|(d, k)| (d + shift2, *k)).collect();
    Ok(OrientationShiftReport {
        reversed: components.to_vec(),
        writhe_before: wb,
        writhe_after: wa,
        shift2,
        ok: moved == after,
        before,
        after,
    })
}
