//! Bigraded dimension tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A pair of gradings stored in half units, so `(2, -1)` means `(1, -1/2)`.
pub type Grading = (i32, i32);

/// Converts integer gradings to half units.
pub fn g(a: i32, b: i32) -> Grading {
    (2 * a, 2 * b)
}

/// Finite map from bigrading to a positive dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BigradedDims {
    support: BTreeMap<Grading, usize>,
}

impl BigradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from integer-valued gradings.
    pub fn from_int_pairs(entries: &[((i32, i32), usize)]) -> Self {
        let mut d = Self::new();
        for &((a, b), n) in entries {
            d.add(g(a, b), n);
        }
        d
    }

    /// Builds from gradings already in half units.
    pub fn from_half_pairs(entries: impl IntoIterator<Item = (Grading, usize)>) -> Self {
        let mut d = Self::new();
        for (k, n) in entries {
            d.add(k, n);
        }
        d
    }

    pub fn add(&mut self, k: Grading, n: usize) {
        if n > 0 {
            *self.support.entry(k).or_insert(0) += n;
        }
    }

    pub fn get(&self, k: Grading) -> usize {
        self.support.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.support.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Grading, usize)> + '_ {
        self.support.iter().map(|(k, v)| (*k, *v))
    }

    /// Convolution of supports.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (a, n) in self.iter() {
            for (b, m) in other.iter() {
                out.add((a.0 + b.0, a.1 + b.1), n * m);
            }
        }
        out
    }

    /// Shifts every grading by `by` (half units).
    pub fn shift(&self, by: Grading) -> Self {
        Self::from_half_pairs(self.iter().map(|(k, n)| ((k.0 + by.0, k.1 + by.1), n)))
    }

    /// Collapses to a single grading `first - second` (half units). For grid
    /// gradings (M, A) this is δ.
    pub fn collapse_difference(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (k, n) in self.iter() {
            *out.entry(k.0 - k.1).or_insert(0) += n;
        }
        out
    }

    /// Sum over the first grading for each second grading.
    pub fn by_second(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for (k, n) in self.iter() {
            *out.entry(k.1).or_insert(0) += n;
        }
        out
    }

    /// Graded Euler characteristic: Σ (-1)^{first} t^{second}, keyed by the
    /// second grading in half units. The first grading must be integral.
    pub fn euler_characteristic(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (k, n) in self.iter() {
            assert!(k.0 % 2 == 0, "half-integral first grading");
            let sign = if (k.0 / 2) % 2 == 0 { 1 } else { -1 };
            *out.entry(k.1).or_insert(0) += sign * n as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Entries as `[first, second, dim]` triples in half units.
    pub fn to_triples(&self) -> Vec<[i64; 3]> {
        self.iter().map(|(k, n)| [k.0 as i64, k.1 as i64, n as i64]).collect()
    }

    pub fn from_triples(t: &[[i64; 3]]) -> Self {
        Self::from_half_pairs(t.iter().map(|e| ((e[0] as i32, e[1] as i32), e[2] as usize)))
    }
}

/// Formats a half-unit grading as an integer or a `k/2` fraction.
pub fn fmt_half(v: i32) -> String {
    if v % 2 == 0 {
        format!("{}", v / 2)
    } else {
        format!("{v}/2")
    }
}

impl fmt::Display for BigradedDims {
    /// Table with one row per first grading and one column per second grading.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "(zero)");
        }
        let firsts: Vec<i32> = {
            let mut v: Vec<i32> = self.support.keys().map(|k| k.0).collect();
            v.dedup();
            v
        };
        let mut seconds: Vec<i32> = self.support.keys().map(|k| k.1).collect();
        seconds.sort_unstable();
        seconds.dedup();
        write!(f, "{:>6} |", "")?;
        for s in &seconds {
            write!(f, "{:>6}", fmt_half(*s))?;
        }
        writeln!(f)?;
        for a in firsts {
            write!(f, "{:>6} |", fmt_half(a))?;
            for s in &seconds {
                match self.get((a, *s)) {
                    0 => write!(f, "{:>6}", ".")?,
                    n => write!(f, "{n:>6}")?,
                }
            }
            writeln!(f)?;
        }
        writeln!(f, "total rank {}", self.total())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tensor_with_unit_is_identity() {
        let a = BigradedDims::from_int_pairs(&[((0, 1), 1), ((2, 5), 3)]);
        let unit = BigradedDims::from_int_pairs(&[((0, 0), 1)]);
        assert_eq!(a.tensor(&unit), a);
    }

    #[test]
    fn unknot_squared_has_quantum_gradings_minus2_0_0_2() {
        let u = BigradedDims::from_int_pairs(&[((0, 1), 1), ((0, -1), 1)]);
        let uu = u.tensor(&u);
        assert_eq!(uu.total(), 4);
        assert_eq!(uu, BigradedDims::from_int_pairs(&[((0, 2), 1), ((0, 0), 2), ((0, -2), 1)]));
    }

    #[test]
    fn v_tensor_v() {
        let v = BigradedDims::from_int_pairs(&[((0, 0), 1), ((-1, -1), 1)]);
        assert_eq!(v.tensor(&v), BigradedDims::from_int_pairs(&[((0, 0), 1), ((-1, -1), 2), ((-2, -2), 1)]));
    }

    #[test]
    fn table_renders_half_gradings() {
        let d = BigradedDims::from_half_pairs([((0, 1), 2)]);
        assert!(d.to_string().contains("1/2"));
    }

    proptest! {
        #[test]
        fn tensor_multiplies_rank(
            a in proptest::collection::vec(((-4i32..4, -4i32..4), 1usize..3), 0..5),
            b in proptest::collection::vec(((-4i32..4, -4i32..4), 1usize..3), 0..5),
        ) {
            let (x, y) = (BigradedDims::from_int_pairs(&a), BigradedDims::from_int_pairs(&b));
            prop_assert_eq!(x.tensor(&y).total(), x.total() * y.total());
            prop_assert_eq!(x.tensor(&y), y.tensor(&x));
            prop_assert_eq!(BigradedDims::from_triples(&x.to_triples()), x);
        }
    }
}
