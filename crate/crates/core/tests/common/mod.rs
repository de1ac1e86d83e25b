//! Fixture loading shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::OnceLock;

use linkhom::algebra::BigradedDims;
use serde_json::Value;

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    let p = fixture_path(rel);
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

/// Values computed by `tools/oracle.py`, independent of this crate.
pub fn oracle() -> &'static Value {
    static ORACLE: OnceLock<Value> = OnceLock::new();
    ORACLE.get_or_init(|| serde_json::from_str(&read_fixture("oracle.json")).expect("oracle.json parses"))
}

/// Oracle F2 Khovanov dims, `[2i, 2j, dim]` triples.
pub fn oracle_kh(name: &str) -> Option<BigradedDims> {
    let t: Vec<[i64; 3]> = serde_json::from_value(oracle()["kh_f2"].get(name)?.clone()).ok()?;
    Some(BigradedDims::from_triples(&t))
}

/// Oracle Alexander coefficients, lowest degree first, up to sign and shift.
pub fn oracle_alexander(key: &str) -> Option<Vec<i64>> {
    serde_json::from_value(oracle()["alexander"].get(key)?.clone()).ok()
}

pub fn oracle_det(name: &str) -> Option<u64> {
    oracle()["det"].get(name)?.as_u64()
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.first() == Some(&0) {
        v.remove(0);
    }
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Whether a graded Euler characteristic keyed by `2A` equals
/// `(t^½ - t^-½)^(l-1) Δ(t)` up to sign and a power of `t`.
pub fn euler_matches_alexander(euler: &BTreeMap<i32, i64>, alexander: &[i64], components: usize) -> bool {
    let mut want = trim(alexander.to_vec());
    for _ in 1..components {
        let mut next = vec![0; want.len() + 1];
        for (k, c) in want.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c;
        }
        want = next;
    }
    let want = trim(want);
    let (Some(&lo), Some(&hi)) = (euler.keys().next(), euler.keys().next_back()) else {
        return want.is_empty();
    };
    if euler.keys().any(|k| (k - lo) % 2 != 0) {
        return false;
    }
    let got: Vec<i64> = (lo..=hi).step_by(2).map(|k| euler.get(&k).copied().unwrap_or(0)).collect();
    let neg: Vec<i64> = got.iter().map(|c| -c).collect();
    got == want || neg == want
}

/// `|Σ (-1)^i i^j dim|` over a reduced Khovanov table: the Jones polynomial
/// at `t = -1`, which is the determinant.
pub fn reduced_determinant(d: &BigradedDims) -> u64 {
    let (mut re, mut im) = (0i64, 0i64);
    for ((i2, j2), n) in d.iter() {
        assert!(i2 % 2 == 0 && j2 % 2 == 0, "half-integral Khovanov grading");
        let sign = if (i2 / 2).rem_euclid(2) == 0 { 1 } else { -1 };
        let n = n as i64 * sign;
        match (j2 / 2).rem_euclid(4) {
            0 => re += n,
            1 => im += n,
            2 => re -= n,
            _ => im -= n,
        }
    }
    ((re * re + im * im) as f64).sqrt().round() as u64
}
