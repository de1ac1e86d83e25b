//! Theorem drivers: Khovanov and `δ`-graded knot Floer mutation invariance
//! on concrete cases, thinness baselines, closure-fraction predictions and
//! table-driven sweeps.
//!
//! A case is a pair of tangles `T1`, `T2` with `L = N(T1 + T2)`, a mutation
//! axis `τ` and the mutant `L' = N(τ(T1) + T2)`. Its rational closure
//! `N(T1 + R)` joins the endpoints of `T1` that `τ` exchanges.

pub mod sweep;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::algebra::Field;
use crate::diagrams::families::{kt_complement, kt_tangle, pretzel_tangle, sample_fractions, sample_tangle};
use crate::diagrams::tangle::{closure_fraction, Tangle};
use crate::diagrams::{DiagramError, PDCode};
use crate::grid::{hat_extract, GridComplex, GridDiagram, GridError};
use crate::khovanov::{is_unlink, kh, KhError};
use crate::skein::{nine_diagram_ranks, SkeinError};

pub use sweep::{corpus_sweep, parse_row, SweepEntry, SweepReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MutationError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Kh(#[from] KhError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// One of the three half turns of the tangle ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Horizontal axis in the page: swaps the top and bottom ends.
    X,
    /// Vertical axis in the page: swaps the left and right ends.
    Y,
    /// Axis through the page: swaps opposite corners.
    Z,
}

impl Axis {
    pub fn apply(self, t: &Tangle) -> Tangle {
        match self {
            Axis::X => t.rot_horizontal(),
            Axis::Y => t.rot_vertical(),
            Axis::Z => t.rot_planar(),
        }
    }

    /// Connectivity a rational tangle `R` needs so that `N(T + R)` joins the
    /// ends of `T` swapped by this axis (see [`Tangle::connectivity`]).
    pub fn closure_connectivity(self) -> Option<u8> {
        match self {
            Axis::X => None,
            Axis::Y => Some(0),
            Axis::Z => Some(1),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

impl FromStr for Axis {
    type Err = MutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().trim_end_matches("-axis") {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(MutationError::Parse(format!("unknown axis '{other}'; use x, y or z"))),
        }
    }
}

fn parse_int(s: &str) -> Result<i64, MutationError> {
    s.trim().parse().map_err(|_| MutationError::Parse(format!("'{s}' is not an integer")))
}

fn parse_ints(s: &str) -> Result<Vec<i64>, MutationError> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_int).collect()
}

/// `p/q` or an integer.
pub fn parse_fraction(s: &str) -> Result<(i64, i64), MutationError> {
    match s.split_once('/') {
        Some((p, q)) => Ok((parse_int(p)?, parse_int(q)?)),
        None => Ok((parse_int(s)?, 1)),
    }
}

fn split_spec(spec: &str) -> (&str, &str) {
    match spec.split_once(':') {
        Some((k, v)) => (k.trim(), v.trim()),
        None => (spec.trim(), ""),
    }
}

fn arity(name: &str, vals: &[i64], n: usize) -> Result<(), MutationError> {
    if vals.len() != n {
        return Err(MutationError::Parse(format!("{name} takes {n} parameter(s), got {}", vals.len())));
    }
    Ok(())
}

/// The tangle being mutated: `kt:r`, `rational:p/q`, `pretzel:a,b,..`,
/// `integer:k` or `sample:k`.
pub fn parse_tangle(spec: &str) -> Result<Tangle, MutationError> {
    let (kind, params) = split_spec(spec);
    match kind {
        "kt" => {
            let v = parse_ints(params)?;
            arity("kt", &v, 1)?;
            Ok(kt_tangle(v[0])?)
        }
        "sample" => {
            let v = parse_ints(params)?;
            arity("sample", &v, 1)?;
            let k = u8::try_from(v[0]).map_err(|_| MutationError::Parse(format!("sample:{}", v[0])))?;
            Ok(sample_tangle(k)?)
        }
        _ => parse_common(kind, params),
    }
}

/// The complementary tangle: `kt:r,n`, `rational:p/q`, `pretzel:a,b,..` or
/// `integer:k`.
pub fn parse_complement(spec: &str) -> Result<Tangle, MutationError> {
    let (kind, params) = split_spec(spec);
    match kind {
        "kt" => {
            let v = parse_ints(params)?;
            arity("kt", &v, 2)?;
            Ok(kt_complement(v[0], v[1])?)
        }
        _ => parse_common(kind, params),
    }
}

fn parse_common(kind: &str, params: &str) -> Result<Tangle, MutationError> {
    match kind {
        "rational" => {
            let (p, q) = parse_fraction(params)?;
            Ok(Tangle::rational(p, q)?)
        }
        "integer" => Ok(Tangle::integer(parse_int(params)?)),
        "pretzel" => {
            let v = parse_ints(params)?;
            if v.is_empty() {
                return Err(MutationError::Parse("pretzel needs at least one column".into()));
            }
            Ok(pretzel_tangle(&v))
        }
        other => Err(MutationError::Parse(format!("unknown tangle family '{other}'"))),
    }
}

/// A mutant pair together with its rational closure.
#[derive(Clone, Debug)]
pub struct MutationCase {
    pub name: String,
    pub t1: Tangle,
    pub t2: Tangle,
    pub axis: Axis,
    /// Fraction of the rational tangle `R` closing `T1`.
    pub closure: (i64, i64),
    /// Grids of `N(T1)` and `N(T2)` for the grid side, when known.
    pub grids: Option<(GridDiagram, GridDiagram)>,
}

/// Small fractions tried when choosing a closure, simplest first.
fn closure_candidates() -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1), (1, 0)];
    for size in 1..=3i64 {
        for q in 1..=size {
            for p in [-size, size] {
                if num_integer::Integer::gcd(&p, &q) == 1 && !out.contains(&(p, q)) {
                    out.push((p, q));
                }
            }
        }
    }
    out
}

impl MutationCase {
    /// Picks the first small rational closure of the right kind that is an
    /// unlink, else the first of the right kind.
    pub fn new(name: impl Into<String>, t1: Tangle, t2: Tangle, axis: Axis) -> Result<Self, MutationError> {
        let mut case = MutationCase { name: name.into(), t1, t2, axis, closure: (0, 1), grids: None };
        let mut first = None;
        for f in closure_candidates() {
            if case.closure_is_admissible(f)? {
                first.get_or_insert(f);
                case.closure = f;
                if is_unlink(&case.closure_link()?)? {
                    return Ok(case);
                }
            }
        }
        case.closure = first.ok_or_else(|| MutationError::Parse("no admissible closure found".into()))?;
        Ok(case)
    }

    /// Overrides the closure after checking that it joins the ends the axis
    /// exchanges.
    pub fn with_closure(mut self, fraction: (i64, i64)) -> Result<Self, MutationError> {
        if !self.closure_is_admissible(fraction)? {
            return Err(MutationError::Parse(format!(
                "closure {}/{} does not join the ends exchanged by the {}-axis",
                fraction.0, fraction.1, self.axis
            )));
        }
        self.closure = fraction;
        Ok(self)
    }

    pub fn with_grids(mut self, l1: GridDiagram, l2: GridDiagram) -> Self {
        self.grids = Some((l1, l2));
        self
    }

    fn closure_is_admissible(&self, f: (i64, i64)) -> Result<bool, MutationError> {
        Ok(Tangle::rational(f.0, f.1)?.connectivity() == self.axis.closure_connectivity())
    }

    /// `KT_{r,n}` against its mutant `C_{r,n}`.
    pub fn kt(r: i64, n: i64) -> Result<Self, MutationError> {
        MutationCase::new(format!("kt:{r},{n}"), kt_tangle(r)?, kt_complement(r, n)?, Axis::Y)
    }

    /// `family:params` with the tangle implied by the family, used by the
    /// command line: `kt:r,n`, `rational:p/q,r/s` or `pretzel:a,b,c,d`
    /// (the first two columns are mutated).
    pub fn parse(spec: &str) -> Result<Self, MutationError> {
        let (kind, params) = split_spec(spec);
        match kind {
            "kt" => {
                let v = parse_ints(params)?;
                arity("kt", &v, 2)?;
                MutationCase::kt(v[0], v[1])
            }
            "rational" => {
                let (a, b) =
                    params.split_once(',').ok_or_else(|| MutationError::Parse("rational takes p/q,r/s".into()))?;
                let (p, q) = parse_fraction(a)?;
                let (r, s) = parse_fraction(b)?;
                MutationCase::new(spec.trim(), Tangle::rational(p, q)?, Tangle::rational(r, s)?, Axis::Y)
            }
            "pretzel" => {
                let v = parse_ints(params)?;
                if v.len() < 3 {
                    return Err(MutationError::Parse("pretzel case needs at least three columns".into()));
                }
                MutationCase::new(spec.trim(), pretzel_tangle(&v[..2]), pretzel_tangle(&v[2..]), Axis::Y)
            }
            other => Err(MutationError::Parse(format!("unknown case family '{other}'"))),
        }
    }

    pub fn link(&self) -> Result<PDCode, MutationError> {
        Ok(self.t1.sum(&self.t2).numerator()?)
    }

    pub fn mutant(&self) -> Result<PDCode, MutationError> {
        Ok(self.axis.apply(&self.t1).sum(&self.t2).numerator()?)
    }

    /// `N(T1 + R)`.
    pub fn closure_link(&self) -> Result<PDCode, MutationError> {
        let r = Tangle::rational(self.closure.0, self.closure.1)?;
        Ok(self.t1.sum(&r).numerator()?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// Every asserted identity held exactly.
    Verified,
    /// Some identity failed.
    Failed,
    /// A precondition does not hold, so nothing is claimed.
    HypothesisUnmet,
    /// The computation exceeds the size guard and was not attempted.
    SizeGuarded,
    /// The case could not be built or computed.
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::HypothesisUnmet => "hypothesis-unmet",
            Status::SizeGuarded => "size-guarded",
            Status::Error => "error",
        })
    }
}

/// One theorem checked on one case, possibly over one field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub theorem: String,
    pub field: Option<String>,
    pub status: Status,
    pub detail: String,
    /// Dimension tables and ranks behind the status.
    pub witness: serde_json::Value,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub case: String,
    pub checks: Vec<Check>,
}

impl Verdict {
    /// Failures and errors dominate, then unmet hypotheses, then guards.
    pub fn status(&self) -> Status {
        let has = |s: Status| self.checks.iter().any(|c| c.status == s);
        if self.checks.is_empty() {
            Status::Error
        } else if has(Status::Failed) {
            Status::Failed
        } else if has(Status::Error) {
            Status::Error
        } else if has(Status::HypothesisUnmet) {
            Status::HypothesisUnmet
        } else if has(Status::SizeGuarded) {
            Status::SizeGuarded
        } else {
            Status::Verified
        }
    }

    pub fn verified(&self) -> bool {
        self.status() == Status::Verified
    }
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// Bigraded Khovanov equality of `L` and `L'` over each field. Fields other
/// than F2 need an unlink closure, certified by F2 rank `2^components`.
pub fn verify_theorem_kh(case: &MutationCase, fields: &[Field]) -> Result<Verdict, MutationError> {
    let link = case.link()?;
    let mutant = case.mutant()?;
    let closure = case.closure_link()?;
    let needs_hypothesis = fields.iter().any(|f| !f.is_f2());
    let hypothesis = if needs_hypothesis { Some(is_unlink(&closure)?) } else { None };
    let mut checks = Vec::new();
    for &field in fields {
        let start = Instant::now();
        let name = "kh-mutation".to_string();
        if !field.is_f2() && hypothesis == Some(false) {
            checks.push(Check {
                theorem: name,
                field: Some(field.to_string()),
                status: Status::HypothesisUnmet,
                detail: format!(
                    "closure N(T1 + [{}/{}]) is not an unlink; only F2 is covered",
                    case.closure.0, case.closure.1
                ),
                witness: json!({ "closure_components": closure.n_components() }),
                runtime_ms: elapsed_ms(start),
            });
            continue;
        }
        let a = kh(&link, field)?;
        let b = kh(&mutant, field)?;
        let equal = a == b;
        checks.push(Check {
            theorem: name,
            field: Some(field.to_string()),
            status: if equal { Status::Verified } else { Status::Failed },
            detail: format!("rank {} vs {}", a.total(), b.total()),
            witness: json!({ "link": a.to_triples(), "mutant": b.to_triples() }),
            runtime_ms: elapsed_ms(start),
        });
    }
    Ok(Verdict { case: case.name.clone(), checks })
}

/// `δ`-graded hat equality of the mutant pair on the grid side, through the
/// nine-diagram rank identities. Needs grids for `N(T1)` and `N(T2)`.
pub fn verify_theorem_hfk(case: &MutationCase, max_n: usize) -> Verdict {
    let start = Instant::now();
    let check = |status, detail: String, witness| Check {
        theorem: "hfk-mutation".into(),
        field: Some(Field::F2.to_string()),
        status,
        detail,
        witness,
        runtime_ms: elapsed_ms(start),
    };
    let Some((l1, l2)) = &case.grids else {
        let c = check(
            Status::SizeGuarded,
            format!("no grid presentation of N(T1) and N(T2) with combined size at most {max_n} is known"),
            serde_json::Value::Null,
        );
        return Verdict { case: case.name.clone(), checks: vec![c] };
    };
    Verdict { case: case.name.clone(), checks: vec![hfk_check(l1, l2, max_n, start)] }
}

/// Grid-side driver for a pair of closures given directly as grids.
pub fn verify_hfk_grids(name: &str, l1: &GridDiagram, l2: &GridDiagram, max_n: usize) -> Verdict {
    Verdict { case: name.to_string(), checks: vec![hfk_check(l1, l2, max_n, Instant::now())] }
}

fn hfk_check(l1: &GridDiagram, l2: &GridDiagram, max_n: usize, start: Instant) -> Check {
    let n = l1.n() + l2.n();
    let (status, detail, witness) = if n > max_n {
        (
            Status::SizeGuarded,
            format!("combined grid size {n} exceeds the guard {max_n}; the tilde complex has {n}! generators"),
            json!({ "n": n, "max_n": max_n }),
        )
    } else {
        match nine_diagram_ranks(l1, l2, max_n) {
            Ok(r) => {
                let status = if r.ok() { Status::Verified } else { Status::Failed };
                let detail = format!("grid size {n}, mutant hat ranks {}", r.mutant_1_inf.values().sum::<usize>());
                (status, detail, serde_json::to_value(&r).unwrap_or_default())
            }
            Err(SkeinError::Hypothesis(m)) => (Status::HypothesisUnmet, m, serde_json::Value::Null),
            Err(SkeinError::Grid(GridError::TooLarge { n, limit })) => (
                Status::SizeGuarded,
                format!("grid size {n} exceeds the guard {limit}"),
                json!({ "n": n, "max_n": limit }),
            ),
            Err(e) => (Status::Error, e.to_string(), serde_json::Value::Null),
        }
    };
    Check {
        theorem: "hfk-mutation".into(),
        field: Some(Field::F2.to_string()),
        status,
        detail,
        witness,
        runtime_ms: elapsed_ms(start),
    }
}

/// Records whether the hat group of `g` sits in a single `δ` grading.
/// Thin links are verified; others report the unmet precondition.
pub fn alternating_baseline(name: &str, g: &GridDiagram, max_n: usize) -> Result<Verdict, MutationError> {
    let start = Instant::now();
    let h = hat_extract(&GridComplex::new(g, max_n)?)?;
    let deltas: BTreeMap<i32, usize> = h.hat.collapse_difference();
    let thin = deltas.len() == 1;
    let detail = if thin {
        format!("thin: hat rank {} in one δ grading", h.hat.total())
    } else {
        format!("not thin: hat spread over {} δ gradings", deltas.len())
    };
    let check = Check {
        theorem: "alternating-baseline".into(),
        field: Some(Field::F2.to_string()),
        status: if thin { Status::Verified } else { Status::HypothesisUnmet },
        detail,
        witness: json!({ "hat": h.hat.to_triples(), "delta2": deltas }),
        runtime_ms: elapsed_ms(start),
    };
    Ok(Verdict { case: name.to_string(), checks: vec![check] })
}

/// Predicted and computed F2 Khovanov rank of `N([p/q] + [r/s])`.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureFractionReport {
    pub fractions: (i64, i64, i64, i64),
    /// The closure is the two-bridge link `b(c, d)`.
    pub c: i64,
    pub d: i64,
    pub predicted_rank: usize,
    pub kh_rank: usize,
    pub ok: bool,
}

/// F2 Khovanov rank of the two-bridge link `b(c, d)`: the two-component
/// unlink for `c = 0`, otherwise `2|c|` since the link is alternating and
/// non-split with determinant `|c|`.
pub fn two_bridge_f2_rank(c: i64) -> usize {
    if c == 0 {
        4
    } else {
        2 * c.unsigned_abs() as usize
    }
}

/// Checks the closure prediction for `[p/q] + [r/s]`.
pub fn verify_closure_fraction(p: i64, q: i64, r: i64, s: i64) -> Result<ClosureFractionReport, MutationError> {
    let (c, d) = closure_fraction(p, q, r, s)?;
    let t = Tangle::rational(p, q)?.sum(&Tangle::rational(r, s)?);
    let kh_rank = kh(&t.numerator()?, Field::F2)?.total();
    let predicted_rank = two_bridge_f2_rank(c);
    Ok(ClosureFractionReport { fractions: (p, q, r, s), c, d, predicted_rank, kh_rank, ok: kh_rank == predicted_rank })
}

/// [`verify_closure_fraction`] on one of the three sample sums
/// (see [`sample_fractions`]).
pub fn verify_sample_closure(which: u8) -> Result<ClosureFractionReport, MutationError> {
    let (p, q, r, s) = sample_fractions(which)?;
    verify_closure_fraction(p, q, r, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::corpus::{figure8_grid, named, unknot_grid, unlink2_grid};

    #[test]
    fn candidate_closures_cover_every_axis() {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let found = closure_candidates()
                .into_iter()
                .any(|(p, q)| Tangle::rational(p, q).unwrap().connectivity() == axis.closure_connectivity());
            assert!(found, "{axis}");
        }
    }

    #[test]
    fn axis_round_trips_through_text() {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            assert_eq!(axis.to_string().parse::<Axis>().unwrap(), axis);
        }
        assert!("w".parse::<Axis>().is_err());
    }

    #[test]
    fn kt_closure_is_the_numerator() {
        let case = MutationCase::kt(2, 1).unwrap();
        assert_eq!(case.closure, (0, 1));
        assert!(is_unlink(&case.closure_link().unwrap()).unwrap());
    }

    #[test]
    fn rational_mutation_is_verified_over_every_field() {
        let case = MutationCase::parse("rational:2/3,-1/2").unwrap();
        let v = verify_theorem_kh(&case, &[Field::F2, Field::Fp(3), Field::Q]).unwrap();
        assert_eq!(v.checks.len(), 3);
        assert!(v.verified(), "{v:?}");
    }

    #[test]
    fn inadmissible_closure_is_rejected() {
        let case = MutationCase::parse("rational:2/3,-1/2").unwrap();
        assert!(case.clone().with_closure((1, 0)).is_err());
        assert!(case.with_closure((0, 1)).is_ok());
    }

    #[test]
    fn unmet_hypothesis_limits_the_verdict_to_f2() {
        // N([3] + [0]) is the trefoil, not an unlink.
        let case = MutationCase::new("t", Tangle::integer(3), Tangle::integer(1), Axis::Y)
            .unwrap()
            .with_closure((0, 1))
            .unwrap();
        let v = verify_theorem_kh(&case, &[Field::F2, Field::Q]).unwrap();
        assert_eq!(v.checks[0].status, Status::Verified);
        assert_eq!(v.checks[1].status, Status::HypothesisUnmet);
        assert_eq!(v.status(), Status::HypothesisUnmet);
    }

    #[test]
    fn hfk_driver_guards_and_verifies() {
        let case = MutationCase::kt(2, 1).unwrap();
        assert_eq!(verify_theorem_hfk(&case, 9).status(), Status::SizeGuarded);
        let trivial = case.with_grids(unlink2_grid(), unknot_grid(2));
        assert!(verify_theorem_hfk(&trivial, 9).verified());
        let big = verify_hfk_grids("big", &unlink2_grid(), &figure8_grid(), 9);
        assert_eq!(big.status(), Status::SizeGuarded);
    }

    #[test]
    fn hfk_driver_reports_unmet_hypothesis() {
        let v = verify_hfk_grids("t", &named("trefoil").unwrap(), &unknot_grid(2), 9);
        assert_eq!(v.status(), Status::HypothesisUnmet);
    }

    #[test]
    fn thin_baselines() {
        for name in ["unknot2", "trefoil", "figure8"] {
            let v = alternating_baseline(name, &named(name).unwrap(), 9).unwrap();
            assert!(v.verified(), "{v:?}");
        }
    }

    #[test]
    fn two_bridge_ranks() {
        assert_eq!(two_bridge_f2_rank(0), 4);
        assert_eq!(two_bridge_f2_rank(-1), 2);
        assert_eq!(two_bridge_f2_rank(3), 6);
        let r = verify_closure_fraction(3, 1, 0, 1).unwrap();
        assert!(r.ok, "{r:?}");
    }

    #[test]
    fn verdict_status_order() {
        let mk = |s| Check {
            theorem: "t".into(),
            field: None,
            status: s,
            detail: String::new(),
            witness: serde_json::Value::Null,
            runtime_ms: 0,
        };
        let v = |ss: &[Status]| Verdict { case: "c".into(), checks: ss.iter().map(|&s| mk(s)).collect() };
        assert_eq!(v(&[Status::Verified, Status::SizeGuarded]).status(), Status::SizeGuarded);
        assert_eq!(v(&[Status::HypothesisUnmet, Status::Failed]).status(), Status::Failed);
        assert_eq!(v(&[]).status(), Status::Error);
    }
}
