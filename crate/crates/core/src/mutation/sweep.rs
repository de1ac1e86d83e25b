//! Batch Khovanov mutation checks from a table, one case per line:
//!
//! ```text
//! # complement      | mutated tangle | axis | fields
//! kt:2,1            | kt:2           | y    | F2,F3,Q
//! rational:-1/2     | rational:2/3   | y    | F2
//! ```
//!
//! The first column is `T2`, the second `T1`. Blank lines and `#` comments
//! are skipped. A bad row becomes an error entry and the sweep goes on.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{parse_complement, parse_tangle, verify_theorem_kh, Axis, MutationCase, MutationError, Status, Verdict};
use crate::algebra::Field;

/// One table row and its outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    /// 1-based line number in the table.
    pub line: usize,
    pub row: String,
    pub verdict: Option<Verdict>,
    pub error: Option<String>,
}

impl SweepEntry {
    pub fn status(&self) -> Status {
        self.verdict.as_ref().map_or(Status::Error, Verdict::status)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn count(&self, s: Status) -> usize {
        self.entries.iter().filter(|e| e.status() == s).count()
    }

    pub fn all_verified(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.status() == Status::Verified)
    }
}

/// Parses one row into a case and its field list.
pub fn parse_row(row: &str) -> Result<(MutationCase, Vec<Field>), MutationError> {
    let cols: Vec<&str> = row.split('|').map(str::trim).collect();
    if cols.len() != 4 {
        return Err(MutationError::Parse(format!("expected 4 columns separated by '|', got {}", cols.len())));
    }
    let t2 = parse_complement(cols[0])?;
    let t1 = parse_tangle(cols[1])?;
    let axis: Axis = cols[2].parse()?;
    let fields = cols[3]
        .split(',')
        .filter(|f| !f.trim().is_empty())
        .map(|f| f.parse::<Field>().map_err(|e| MutationError::Parse(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if fields.is_empty() {
        return Err(MutationError::Parse("no fields listed".into()));
    }
    Ok((MutationCase::new(row.trim(), t1, t2, axis)?, fields))
}

fn run_row(row: &str) -> Result<Verdict, String> {
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        let (case, fields) = parse_row(row)?;
        verify_theorem_kh(&case, &fields)
    }));
    match outcome {
        Ok(r) => r.map_err(|e| e.to_string()),
        Err(_) => Err("computation panicked".into()),
    }
}

/// Runs every row on `jobs` worker threads (0 picks the default). Entries
/// come back in table order whatever the thread count.
pub fn corpus_sweep(table: &str, jobs: usize) -> SweepReport {
    let rows: Vec<(usize, &str)> = table
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let work = || -> Vec<SweepEntry> {
        rows.par_iter()
            .map(|&(line, row)| {
                let (verdict, error) = match run_row(row) {
                    Ok(v) => (Some(v), None),
                    Err(e) => (None, Some(e)),
                };
                SweepEntry { line, row: row.to_string(), verdict, error }
            })
            .collect()
    };
    let entries = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    SweepReport { entries }
}
