//! Argument parsing and the three command groups.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use linkhom::algebra::{BigradedDims, Field};
use linkhom::basepoints::{verify_clifford, verify_kunneth};
use linkhom::diagrams::io::to_text;
use linkhom::grid::corpus::corpus;
use linkhom::grid::{gh_tilde, hat_extract, verify_orientation_shift, verify_stabilization, GridComplex, GridDiagram};
use linkhom::khovanov::{kh, kh_reduced};
use linkhom::mutation::{
    corpus_sweep, parse_fraction, verify_closure_fraction, verify_hfk_grids, verify_sample_closure, verify_theorem_hfk,
    verify_theorem_kh, Axis, MutationCase, Status, Verdict,
};
use linkhom::skein::{build_skein_triple, equivariance_check, half_rank_check, merge_triple, SkeinMaps};

use crate::cache::{cache_key, CacheRecord, CacheStore};
use crate::error::{CliError, EXIT_FAIL, EXIT_GUARD, EXIT_INPUT, EXIT_OK};
use crate::input::{grid_family, load_grid, load_pd, parse_list, parse_permutation, pd_family, FamilyParams};

#[derive(Parser, Debug)]
#[command(name = "linkhom", version, about = "Exact Khovanov and grid homology with mutation checks")]
pub struct Cli {
    /// Coefficient field: F2, F3, F5, Q (verify accepts a comma list).
    #[arg(long, global = true, default_value = "F2")]
    pub field: String,
    /// Largest grid size to attempt.
    #[arg(long = "max-grid", global = true, default_value_t = 9)]
    pub max_grid: usize,
    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cache directory; falls back to HOM_CACHE_DIR, then ./.homcache.
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a homology table and store it in the cache.
    Compute(ComputeArgs),
    /// Check an identity and print one PASS/FAIL line per assertion.
    Verify(VerifyArgs),
    /// Inspect or clear the cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    Kh,
    KhReduced,
    GhTilde,
    GhHat,
}

impl Theory {
    fn name(self) -> &'static str {
        match self {
            Theory::Kh => "kh",
            Theory::KhReduced => "kh-reduced",
            Theory::GhTilde => "gh-tilde",
            Theory::GhHat => "gh-hat",
        }
    }

    fn is_grid(self) -> bool {
        matches!(self, Theory::GhTilde | Theory::GhHat)
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct Params {
    /// Named diagram family or corpus grid.
    #[arg(long)]
    pub family: Option<String>,
    /// Twist parameter of the kt and conway families.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    /// Size or twist count, depending on the family.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Component count (unlink) or shift (torus grid).
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// Twist columns, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub cols: Option<String>,
}

impl Params {
    fn family_params(&self) -> Result<FamilyParams, CliError> {
        Ok(FamilyParams { r: self.r, n: self.n, k: self.k, cols: self.cols.as_deref().map(parse_list).transpose()? })
    }
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    pub theory: Theory,
    #[command(flatten)]
    pub params: Params,
    /// Planar diagram file (text or JSON).
    #[arg(long)]
    pub pd: Option<PathBuf>,
    /// Grid file (text or JSON) or corpus name.
    #[arg(long)]
    pub grid: Option<String>,
    /// Basepoint edge for kh-reduced, 1-indexed.
    #[arg(long)]
    pub basepoint: Option<usize>,
    /// Skip the cache lookup and recompute.
    #[arg(long)]
    pub fresh: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    KhMutation,
    HfkMutation,
    Clifford,
    SkeinHalfRank,
    Equivariance,
    Kunneth,
    Stabilization,
    OrientationShift,
    ClosureFraction,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub target: Target,
    #[command(flatten)]
    pub params: Params,
    /// Mutation case, e.g. `kt:2,1` or `rational:2/3,-1/2`.
    #[arg(long)]
    pub case: Option<String>,
    /// Mutation axis: x, y or z.
    #[arg(long)]
    pub axis: Option<String>,
    /// Rational closure fraction `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    pub closure: Option<String>,
    /// Case table for a Khovanov sweep.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// First link (grid file or corpus name).
    #[arg(long)]
    pub l1: Option<String>,
    /// Second link (grid file or corpus name).
    #[arg(long)]
    pub l2: Option<String>,
    /// Grid file or corpus name.
    #[arg(long)]
    pub grid: Option<String>,
    /// Right column of the skein window.
    #[arg(long)]
    pub col: Option<usize>,
    /// Successor permutation, 1-indexed one-line notation.
    #[arg(long)]
    pub nu: Option<String>,
    /// Components to reverse, comma separated.
    #[arg(long)]
    pub components: Option<String>,
    /// Tangle spec, e.g. `sample:2`.
    #[arg(long)]
    pub tangle: Option<String>,
    /// Two fractions `p/q,r/s`.
    #[arg(long, allow_hyphen_values = true)]
    pub fractions: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CacheAction {
    /// One line per stored record.
    List,
    /// Print one record, selected by a key prefix.
    Inspect { key: String },
    /// Remove every record.
    Clear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mark {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub result: Mark,
}

/// What a verify target produced.
#[derive(Default)]
struct Outcome {
    lines: Vec<Assertion>,
    report: Value,
    guarded: Option<String>,
}

impl Outcome {
    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.lines.push(Assertion { name: name.into(), result: if ok { Mark::Pass } else { Mark::Fail } });
    }

    fn skip(&mut self, name: impl Into<String>) {
        self.lines.push(Assertion { name: name.into(), result: Mark::Skip });
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build();
    let mut ctx = Ctx { cli: &cli, out, err };
    let result = match pool {
        Ok(p) => p.install(|| dispatch(&mut ctx)),
        Err(_) => dispatch(&mut ctx),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "{e}");
            e.exit_code()
        }
    }
}

fn dispatch(ctx: &mut Ctx) -> Result<i32, CliError> {
    match &ctx.cli.command {
        Command::Compute(a) => compute(ctx, a),
        Command::Verify(a) => verify(ctx, a),
        Command::Cache { action } => cache(ctx, action),
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn fields(spec: &str) -> Result<Vec<Field>, CliError> {
    let fs: Vec<Field> = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Field>().map_err(|e| CliError::Input(e.to_string())))
        .collect::<Result<_, _>>()?;
    if fs.is_empty() {
        return Err(CliError::Input("no field given".into()));
    }
    Ok(fs)
}

fn single_field(spec: &str) -> Result<Field, CliError> {
    match fields(spec)?.as_slice() {
        [f] => Ok(*f),
        _ => Err(CliError::Input("compute takes a single --field".into())),
    }
}

fn store(cli: &Cli) -> CacheStore {
    let env = std::env::var("HOM_CACHE_DIR").ok();
    CacheStore::new(CacheStore::resolve(cli.cache_dir.as_deref(), env.as_deref()))
}

fn grid_input(grid: &Option<String>, params: &Params) -> Result<GridDiagram, CliError> {
    match (grid, &params.family) {
        (Some(g), _) => load_grid(g),
        (None, Some(f)) => grid_family(f, &params.family_params()?),
        (None, None) => Err(CliError::Input("give --grid or --family".into())),
    }
}

fn compute(ctx: &mut Ctx, a: &ComputeArgs) -> Result<i32, CliError> {
    let cli = ctx.cli;
    let field = single_field(&cli.field)?;
    let theory = a.theory;
    if theory.is_grid() && !field.is_f2() {
        return Err(CliError::Input("grid homology is computed over F2 only".into()));
    }
    // Canonical text of the input and a closure computing its table.
    let (diagram, job): (String, Box<dyn Fn() -> Result<BigradedDims, CliError>>) = if theory.is_grid() {
        let g = grid_input(&a.grid, &a.params)?;
        let max = cli.max_grid;
        let text = g.to_text();
        let job: Box<dyn Fn() -> Result<BigradedDims, CliError>> = match theory {
            Theory::GhTilde => Box::new(move || Ok(gh_tilde(&g, max)?)),
            _ => Box::new(move || Ok(hat_extract(&GridComplex::new(&g, max)?)?.hat)),
        };
        (text, job)
    } else {
        let pd = match (&a.pd, &a.params.family) {
            (Some(p), _) => load_pd(p)?,
            (None, Some(f)) => pd_family(f, &a.params.family_params()?)?,
            (None, None) => return Err(CliError::Input("give --pd or --family".into())),
        };
        let pd = match a.basepoint {
            Some(0) => return Err(CliError::Input("--basepoint is 1-indexed".into())),
            Some(b) => pd.with_basepoint(Some(b - 1))?,
            None => pd,
        };
        let text = to_text(&pd);
        let job: Box<dyn Fn() -> Result<BigradedDims, CliError>> = match theory {
            Theory::Kh => Box::new(move || Ok(kh(&pd, field)?)),
            _ => Box::new(move || Ok(kh_reduced(&pd, None, field)?)),
        };
        (text, job)
    };
    let store = store(cli);
    let key = cache_key(&diagram, theory.name(), &field.to_string());
    let cached = if a.fresh {
        None
    } else {
        match store.get(&key) {
            Ok(Some(r)) if r.version_matches() && r.key_is_consistent() => Some(r),
            Ok(Some(r)) => {
                let _ =
                    writeln!(ctx.err, "warning: cached record {} from version {} ignored", &key[..12], r.tool_version);
                None
            }
            Ok(None) => None,
            Err(e) => {
                let _ = writeln!(ctx.err, "warning: unreadable cache record {}: {e}", &key[..12]);
                None
            }
        }
    };
    let (rec, hit) = match cached {
        Some(r) => (r, true),
        None => {
            let dims = job()?;
            let rec = CacheRecord::new(&diagram, theory.name(), &field.to_string(), &dims);
            if let Err(e) = store.put(&rec) {
                let _ = writeln!(ctx.err, "warning: cache not written: {e}");
            }
            (rec, false)
        }
    };
    if cli.json {
        write!(ctx.out, "{}", rec.to_json()).map_err(io_err)?;
    } else {
        let dims = rec.dims();
        writeln!(ctx.out, "{} over {}", theory.name(), field).map_err(io_err)?;
        write!(ctx.out, "{dims}").map_err(io_err)?;
    }
    let _ = writeln!(ctx.err, "cache {} {}", if hit { "hit" } else { "stored" }, &rec.key[..12]);
    Ok(EXIT_OK)
}

fn verify(ctx: &mut Ctx, a: &VerifyArgs) -> Result<i32, CliError> {
    let cli = ctx.cli;
    let max = cli.max_grid;
    let outcome = match a.target {
        Target::KhMutation => kh_mutation(cli, a)?,
        Target::HfkMutation => hfk_mutation(a, max)?,
        Target::Clifford => clifford(a)?,
        Target::SkeinHalfRank => {
            let (l1, l2) = pair(a)?;
            let r = half_rank_check(&l1, &l2, max)?;
            let mut o = Outcome::default();
            for l in &r.lines {
                o.push(
                    format!("2δ = {}: rank {} is half of {}", l.delta2, l.rank, l.target_dim),
                    2 * l.rank == l.target_dim,
                );
            }
            o.push(format!("exactness: {:?} with total rank {}", r.dims, r.total_rank), r.exact_total);
            o.push("δ bookkeeping of the triangle", r.bookkeeping);
            o.report = json!(r);
            o
        }
        Target::Equivariance => {
            let triple = match (&a.grid, a.col) {
                (Some(g), Some(c)) => build_skein_triple(&load_grid(g)?, c)?,
                (Some(_), None) => return Err(CliError::Input("--grid needs --col".into())),
                _ => {
                    let (l1, l2) = pair(a)?;
                    merge_triple(&l1, &l2)?
                }
            };
            let maps = SkeinMaps::new(&triple, max)?;
            let r = equivariance_check(&maps)?;
            let kind = if r.orientable { "orientable" } else { "nonorientable" };
            let mut o = Outcome::default();
            for l in &r.lines {
                o.push(format!("{kind}: {}", l.relation), l.holds);
            }
            o.report = json!(r);
            o
        }
        Target::Kunneth => {
            let (l1, l2) = pair(a)?;
            let r = verify_kunneth(&l1, &l2, max)?;
            let mut o = Outcome::default();
            o.push("hat of the disjoint union is hat ⊗ hat ⊗ U", r.union_ok);
            o.push("hat of the connected sum is hat ⊗ hat", r.sum_ok);
            o.push("central operator ranks on the union", r.operators_ok);
            o.report = json!(r);
            o
        }
        Target::Stabilization => {
            let grids: Vec<(String, GridDiagram)> = match &a.grid {
                Some(g) => vec![(g.clone(), load_grid(g)?)],
                None => corpus().into_iter().filter(|(_, g)| g.n() < max).map(|(k, g)| (k.to_string(), g)).collect(),
            };
            let mut o = Outcome::default();
            let mut reports = Vec::new();
            for (name, g) in grids {
                for r in verify_stabilization(&g, max)? {
                    o.push(format!("{name}: stabilized at {:?} gives tilde ⊗ V", r.corner), r.ok);
                    reports.push(json!({ "grid": name, "report": r }));
                }
            }
            o.report = Value::Array(reports);
            o
        }
        Target::OrientationShift => {
            let name = a.grid.as_deref().ok_or_else(|| CliError::Input("--grid is required".into()))?;
            let g = load_grid(name)?;
            let sets: Vec<Vec<usize>> = match &a.components {
                Some(c) => vec![parse_list(c)?
                    .into_iter()
                    .map(|v| usize::try_from(v).map_err(|_| CliError::Input(format!("bad component {v}"))))
                    .collect::<Result<_, _>>()?],
                None => {
                    let l = g.n_components();
                    let mut s: Vec<Vec<usize>> = (0..l).map(|c| vec![c]).collect();
                    if l > 1 {
                        s.push((0..l).collect());
                    }
                    s
                }
            };
            let mut o = Outcome::default();
            let mut reports = Vec::new();
            for comps in sets {
                let r = verify_orientation_shift(&g, &comps, max)?;
                o.push(format!("{name}: reversing {:?} shifts 2δ by {} = (wr - wr')/2", comps, r.shift2), r.ok);
                reports.push(json!(r));
            }
            o.report = Value::Array(reports);
            o
        }
        Target::ClosureFraction => {
            let items: Vec<(String, _)> = match (&a.tangle, &a.fractions) {
                (Some(t), _) => {
                    let which =
                        t.strip_prefix("sample:").and_then(|w| w.trim().parse::<u8>().ok()).ok_or_else(|| {
                            CliError::Input(format!("unknown tangle '{t}'; use sample:1, sample:2 or sample:3"))
                        })?;
                    vec![(t.clone(), verify_sample_closure(which)?)]
                }
                (None, Some(f)) => {
                    let (x, y) =
                        f.split_once(',').ok_or_else(|| CliError::Input("--fractions takes p/q,r/s".into()))?;
                    let (p, q) = parse_fraction(x)?;
                    let (r, s) = parse_fraction(y)?;
                    vec![(f.clone(), verify_closure_fraction(p, q, r, s)?)]
                }
                (None, None) => (1..=3u8)
                    .map(|w| Ok((format!("sample:{w}"), verify_sample_closure(w)?)))
                    .collect::<Result<_, CliError>>()?,
            };
            let mut o = Outcome::default();
            for (name, r) in &items {
                o.push(
                    format!(
                        "{name}: closure fraction {}, predicted F2 rank {}, computed {}",
                        r.c, r.predicted_rank, r.kh_rank
                    ),
                    r.ok,
                );
            }
            o.report = json!(items.iter().map(|(n, r)| json!({ "tangle": n, "report": r })).collect::<Vec<_>>());
            o
        }
    };
    emit(ctx, a.target, outcome)
}

fn emit(ctx: &mut Ctx, target: Target, o: Outcome) -> Result<i32, CliError> {
    let name = target.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    if ctx.cli.json {
        let v = json!({ "target": name, "assertions": o.lines, "guarded": o.guarded, "report": o.report });
        writeln!(ctx.out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io_err)?;
    } else {
        for l in &o.lines {
            let mark = match l.result {
                Mark::Pass => "PASS",
                Mark::Fail => "FAIL",
                Mark::Skip => "SKIP",
            };
            writeln!(ctx.out, "{mark} {}", l.name).map_err(io_err)?;
        }
    }
    if let Some(g) = o.guarded {
        let _ = writeln!(ctx.err, "size guard: {g}");
        return Ok(EXIT_GUARD);
    }
    Ok(if o.lines.iter().any(|l| l.result == Mark::Fail) { EXIT_FAIL } else { EXIT_OK })
}

fn pair(a: &VerifyArgs) -> Result<(GridDiagram, GridDiagram), CliError> {
    match (&a.l1, &a.l2) {
        (Some(x), Some(y)) => Ok((load_grid(x)?, load_grid(y)?)),
        _ => Err(CliError::Input("give --l1 and --l2".into())),
    }
}

fn verdict_lines(o: &mut Outcome, v: &Verdict, prefix: &str) {
    for c in &v.checks {
        let field = c.field.as_deref().unwrap_or("-");
        let name = format!("{prefix}{} {} over {field}: {}", c.theorem, v.case, c.detail);
        match c.status {
            Status::Verified => o.push(name, true),
            Status::Failed | Status::Error => o.push(name, false),
            Status::HypothesisUnmet => o.skip(name),
            Status::SizeGuarded => {
                o.skip(name);
                o.guarded.get_or_insert_with(|| c.detail.clone());
            }
        }
    }
}

fn kh_mutation(cli: &Cli, a: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut o = Outcome::default();
    if let Some(path) = &a.table {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let report = corpus_sweep(&text, cli.jobs);
        for e in &report.entries {
            match (&e.verdict, &e.error) {
                (Some(v), _) => verdict_lines(&mut o, v, &format!("line {}: ", e.line)),
                (None, err) => {
                    o.push(format!("line {}: {} ({})", e.line, e.row, err.as_deref().unwrap_or("error")), false)
                }
            }
        }
        o.report = json!(report);
        return Ok(o);
    }
    let spec = a.case.as_deref().unwrap_or("kt:2,1");
    let mut case = MutationCase::parse(spec)?;
    if let Some(ax) = &a.axis {
        let axis: Axis = ax.parse()?;
        case = MutationCase::new(case.name, case.t1, case.t2, axis)?;
    }
    if let Some(c) = &a.closure {
        case = case.with_closure(parse_fraction(c)?)?;
    }
    let v = verify_theorem_kh(&case, &fields(&cli.field)?)?;
    verdict_lines(&mut o, &v, "");
    o.report = json!(v);
    Ok(o)
}

const NINE_KEYS: [&str; 9] = [
    "unlink_hypothesis",
    "central_vanishing",
    "consecutive_pair",
    "virtually_surjective",
    "commutes",
    "double_rank",
    "equal_rank",
    "sums_agree",
    "mutants_agree",
];

fn hfk_mutation(a: &VerifyArgs, max: usize) -> Result<Outcome, CliError> {
    let v = match (&a.l1, &a.l2, &a.case) {
        (Some(x), Some(y), _) => verify_hfk_grids(&format!("{x}+{y}"), &load_grid(x)?, &load_grid(y)?, max),
        (_, _, Some(c)) => verify_theorem_hfk(&MutationCase::parse(c)?, max),
        _ => return Err(CliError::Input("give --l1 and --l2, or --case".into())),
    };
    let mut o = Outcome::default();
    for c in &v.checks {
        match c.status {
            Status::Verified | Status::Failed => {
                for k in NINE_KEYS {
                    let held = c.witness.get(k).and_then(Value::as_bool).unwrap_or(false);
                    o.push(format!("{} {}: {}", c.theorem, v.case, k.replace('_', " ")), held);
                }
            }
            Status::HypothesisUnmet => o.skip(format!("{} {}: {}", c.theorem, v.case, c.detail)),
            Status::SizeGuarded => {
                o.skip(format!("{} {}: {}", c.theorem, v.case, c.detail));
                o.guarded = Some(c.detail.clone());
            }
            Status::Error => return Err(CliError::Input(c.detail.clone())),
        }
    }
    o.report = json!(v);
    Ok(o)
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { return out };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

fn clifford(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let nus = match (&a.nu, a.params.n) {
        (Some(s), n) => {
            let nu = parse_permutation(s)?;
            if let Some(n) = n {
                if nu.len() as i64 != n {
                    return Err(CliError::Input(format!("--nu has {} entries but --n is {n}", nu.len())));
                }
            }
            vec![nu]
        }
        (None, Some(n)) if (1..=5).contains(&n) => permutations(n as usize),
        (None, Some(n)) => return Err(CliError::Input(format!("--n {n} without --nu must be between 1 and 5"))),
        (None, None) => return Err(CliError::Input("give --nu or --n".into())),
    };
    let mut o = Outcome::default();
    let mut reports = Vec::new();
    for nu in nus {
        let r = verify_clifford(&nu, 3);
        let label: Vec<String> = nu.iter().map(|k| (k + 1).to_string()).collect();
        let label = format!("ν = {}", label.join(","));
        let n = nu.len();
        o.push(format!("{label}: dimension {} = 4^{n}", r.dimension), r.dimension == 1 << (2 * n));
        if let Some(assoc) = r.associative {
            o.push(format!("{label}: associative on all basis triples"), assoc);
        }
        o.push(format!("{label}: decomposition brackets"), r.decomposition_ok);
        o.push(format!("{label}: central linear elements are shift-fixed"), r.center_is_fixed_space);
        o.push(
            format!("{label}: center dimension {} = 4^{}", r.center_dimension, r.components),
            r.center_dimension == 1 << (2 * r.components),
        );
        reports.push(r);
    }
    o.report = json!(reports);
    Ok(o)
}

fn cache(ctx: &mut Ctx, action: &CacheAction) -> Result<i32, CliError> {
    let store = store(ctx.cli);
    match action {
        CacheAction::List => {
            let (recs, bad) = store.list().map_err(io_err)?;
            if ctx.cli.json {
                let v: Vec<Value> = recs.iter().map(|r| serde_json::to_value(r).expect("record")).collect();
                writeln!(ctx.out, "{}", serde_json::to_string_pretty(&v).expect("json")).map_err(io_err)?;
            } else if recs.is_empty() {
                writeln!(ctx.out, "cache {} is empty", store.dir().display()).map_err(io_err)?;
            } else {
                for r in &recs {
                    let first = r.diagram.split_whitespace().collect::<Vec<_>>().join(" ");
                    writeln!(ctx.out, "{}  {:<10} {:<3} {}", &r.key[..12], r.theory, r.field, first).map_err(io_err)?;
                }
            }
            for r in recs.iter().filter(|r| !r.version_matches()) {
                let _ = writeln!(ctx.err, "warning: {} was written by version {}", &r.key[..12], r.tool_version);
            }
            for p in bad {
                let _ = writeln!(ctx.err, "warning: unreadable cache file {}", p.display());
            }
            Ok(EXIT_OK)
        }
        CacheAction::Inspect { key } => {
            let r = store.find(key).map_err(CliError::Input)?;
            if !r.version_matches() {
                let _ = writeln!(ctx.err, "warning: record written by version {}", r.tool_version);
            }
            if !r.key_is_consistent() {
                let _ = writeln!(ctx.err, "warning: stored key does not match the record contents");
            }
            if ctx.cli.json {
                write!(ctx.out, "{}", r.to_json()).map_err(io_err)?;
            } else {
                writeln!(
                    ctx.out,
                    "key: {}\ntheory: {}\nfield: {}\nversion: {}\ndiagram: {}",
                    r.key,
                    r.theory,
                    r.field,
                    r.tool_version,
                    r.diagram.trim_end()
                )
                .map_err(io_err)?;
                write!(ctx.out, "{}", r.dims()).map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        CacheAction::Clear => {
            let k = store.clear().map_err(io_err)?;
            writeln!(ctx.out, "removed {k} record(s) from {}", store.dir().display()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn permutations_are_lexicographic() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn bad_arguments_exit_two() {
        assert_eq!(run_str(&["linkhom", "compute"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["linkhom", "verify", "nonsense"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["linkhom", "verify", "clifford"]).0, EXIT_INPUT);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["linkhom", "--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("compute"));
    }

    #[test]
    fn clifford_for_every_successor_on_two_points() {
        let (code, out, _) = run_str(&["linkhom", "verify", "clifford", "--n", "2"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    }

    #[test]
    fn single_field_rejects_lists() {
        assert!(single_field("F2,Q").is_err());
        assert_eq!(single_field("Q").unwrap(), Field::Q);
        assert!(fields("F4").is_err());
    }
}
