//! Resolving diagrams from files, corpus names and family parameters.

use std::fs;
use std::path::Path;

use linkhom::diagrams::families::{conway, kt, pretzel, sample_tangle, torus2, unlink};
use linkhom::diagrams::io::{from_json, parse_text, PdJson};
use linkhom::diagrams::PDCode;
use linkhom::grid::corpus::{named, torus_grid, unknot_grid};
use linkhom::grid::GridDiagram;

use crate::error::CliError;

/// Parameters shared by the family generators.
#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    pub r: Option<i64>,
    pub n: Option<i64>,
    pub k: Option<i64>,
    pub cols: Option<Vec<i64>>,
}

fn need(v: Option<i64>, flag: &str, family: &str) -> Result<i64, CliError> {
    v.ok_or_else(|| CliError::Input(format!("family {family} needs --{flag}")))
}

/// Planar diagram families: `unknot`, `unlink --k`, `hopf` and `trefoil`
/// (positive),
/// `torus2 --n`, `pretzel --cols`, `kt --r --n`, `conway --r --n`,
/// `sample --n` (numerator closure of the sample sum).
pub fn pd_family(name: &str, p: &FamilyParams) -> Result<PDCode, CliError> {
    let pd = match name {
        "unknot" => unlink(1),
        "unlink" => {
            let k = p.k.unwrap_or(2);
            if k < 1 {
                return Err(CliError::Input("--k must be positive".into()));
            }
            unlink(k as usize)
        }
        "hopf" => torus2(-2)?,
        "trefoil" => torus2(-3)?,
        "torus2" => torus2(need(p.n, "n", name)?)?,
        "pretzel" => pretzel(p.cols.as_deref().ok_or_else(|| CliError::Input("family pretzel needs --cols".into()))?)?,
        "kt" => kt(need(p.r, "r", name)?, need(p.n, "n", name)?)?,
        "conway" => conway(need(p.r, "r", name)?, need(p.n, "n", name)?)?,
        "sample" => {
            let w = need(p.n, "n", name)?;
            let w = u8::try_from(w).map_err(|_| CliError::Input(format!("sample has no tangle {w}")))?;
            sample_tangle(w)?.numerator()?
        }
        other => return Err(CliError::Input(format!("unknown diagram family '{other}'"))),
    };
    Ok(pd)
}

/// Grid families: any corpus name, `unknot` (size `--n`, default 2) and
/// `torus --n --k` (the negative torus link `T(k, n - k)`).
pub fn grid_family(name: &str, p: &FamilyParams) -> Result<GridDiagram, CliError> {
    match name {
        "unknot" => {
            let n = p.n.unwrap_or(2);
            if n < 1 {
                return Err(CliError::Input("--n must be positive".into()));
            }
            Ok(unknot_grid(n as usize))
        }
        "torus" => {
            let n = need(p.n, "n", name)?;
            let k = need(p.k, "k", name)?;
            if n < 2 || k < 1 || k >= n {
                return Err(CliError::Input(format!("torus grid needs 0 < k < n, got n = {n}, k = {k}")));
            }
            Ok(torus_grid(n as usize, k as usize))
        }
        other => named(other).ok_or_else(|| CliError::Input(format!("unknown grid '{other}'"))),
    }
}

/// Text or JSON planar diagram from a file.
pub fn load_pd(path: &Path) -> Result<PDCode, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_pd(&text)
}

pub fn parse_pd(text: &str) -> Result<PDCode, CliError> {
    if text.trim_start().starts_with('{') {
        let j: PdJson = serde_json::from_str(text).map_err(|e| CliError::Input(format!("PD JSON: {e}")))?;
        Ok(from_json(&j)?)
    } else {
        Ok(parse_text(text)?)
    }
}

/// A grid from a file (text or JSON) or, failing that, a corpus name.
pub fn load_grid(arg: &str) -> Result<GridDiagram, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return Ok(GridDiagram::parse(&text)?);
    }
    named(arg).ok_or_else(|| CliError::Input(format!("'{arg}' is neither a grid file nor a corpus name")))
}

/// A successor permutation in one-line notation, 1-indexed: `231` or
/// `2,3,1`. Returned 0-indexed.
pub fn parse_permutation(s: &str) -> Result<Vec<usize>, CliError> {
    let s = s.trim();
    let parts: Vec<&str> =
        if s.contains(',') { s.split(',').collect() } else { s.split("").filter(|t| !t.is_empty()).collect() };
    let mut v = Vec::with_capacity(parts.len());
    for t in parts {
        let k: usize = t.trim().parse().map_err(|_| CliError::Input(format!("bad permutation entry '{t}'")))?;
        v.push(k);
    }
    let n = v.len();
    let mut seen = vec![false; n];
    for &k in &v {
        if k == 0 || k > n || seen[k - 1] {
            return Err(CliError::Input(format!("'{s}' is not a permutation of 1..{n}")));
        }
        seen[k - 1] = true;
    }
    Ok(v.into_iter().map(|k| k - 1).collect())
}

/// Comma-separated integers.
pub fn parse_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| CliError::Input(format!("'{t}' is not an integer"))))
        .collect()
}
