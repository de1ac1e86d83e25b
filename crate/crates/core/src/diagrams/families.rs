//! Named links and tangles.
//!
//! Crossing counts of the generated diagrams (no simplification is done):
//! `torus2(n)` has |n|, `pretzel(a..)` has Σ|a_i|, and `kt(r, n)` and
//! `conway(r, n)` have 2|r| + 2|r+1| + 2|n|, which is 12 for `(2, 1)`.

use crate::diagrams::tangle::Tangle;
use crate::diagrams::{DiagramError, PDCode};

/// The `k`-component unlink.
pub fn unlink(k: usize) -> PDCode {
    PDCode::unlink(k)
}

/// The (2, n) torus link as the numerator closure of [n]. With the
/// orientation chosen here the crossings are negative for `n > 0`, so the
/// positive trefoil is `torus2(-3)`.
pub fn torus2(n: i64) -> Result<PDCode, DiagramError> {
    if n == 0 {
        return Ok(PDCode::unlink(2));
    }
    Tangle::integer(n).numerator()
}

/// Sum of vertical twist columns.
pub fn pretzel_tangle(cols: &[i64]) -> Tangle {
    cols.iter().map(|&a| Tangle::vertical(a)).reduce(|acc, t| acc.sum(&t)).unwrap_or_else(Tangle::zero)
}

/// Pretzel link with the given twist columns.
pub fn pretzel(cols: &[i64]) -> Result<PDCode, DiagramError> {
    if cols.is_empty() {
        return Err(DiagramError::Params("pretzel needs at least one column".into()));
    }
    pretzel_tangle(cols).numerator()
}

/// The columns `r` and `-r-1` side by side; its numerator closure is the
/// (2, -1) torus knot, an unknot.
pub fn kt_tangle(r: i64) -> Result<Tangle, DiagramError> {
    if r == 0 || r == -1 {
        return Err(DiagramError::Params(format!("r = {r} gives a trivial column")));
    }
    Ok(pretzel_tangle(&[r, -r - 1]))
}

/// The rest of the knot: columns `-r` and `r+1` over `n` horizontal full
/// twists. The twist box turns the pretzel link into a knot.
pub fn kt_complement(r: i64, n: i64) -> Result<Tangle, DiagramError> {
    if r == 0 || r == -1 {
        return Err(DiagramError::Params(format!("r = {r} gives a trivial column")));
    }
    Ok(pretzel_tangle(&[-r, r + 1]).product(&Tangle::integer(2 * n)))
}

/// The knot `KT_{r,n}`.
pub fn kt(r: i64, n: i64) -> Result<PDCode, DiagramError> {
    kt_tangle(r)?.sum(&kt_complement(r, n)?).numerator()
}

/// The mutant `C_{r,n}`: `kt_tangle(r)` turned about the vertical axis.
pub fn conway(r: i64, n: i64) -> Result<PDCode, DiagramError> {
    kt_tangle(r)?.rot_vertical().sum(&kt_complement(r, n)?).numerator()
}

/// Sums of two rational tangles `[p/q] + [r/s]`: tangle 1 is
/// `[-1/3] + [1/2]`, tangle 2 is `[-3/5] + [1/2]`, tangle 3 is
/// `[2/3] + [-2/3]`.
pub fn sample_fractions(which: u8) -> Result<(i64, i64, i64, i64), DiagramError> {
    match which {
        1 => Ok((-1, 3, 1, 2)),
        2 => Ok((-3, 5, 1, 2)),
        3 => Ok((2, 3, -2, 3)),
        _ => Err(DiagramError::Params(format!("no tangle {which}; choose 1, 2 or 3"))),
    }
}

pub fn sample_tangle(which: u8) -> Result<Tangle, DiagramError> {
    let (p, q, r, s) = sample_fractions(which)?;
    Ok(Tangle::rational(p, q)?.sum(&Tangle::rational(r, s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unlink_one_is_the_unknot() {
        assert_eq!(unlink(1), PDCode::unlink(1));
        assert_eq!(unlink(1).n_components(), 1);
    }

    #[test]
    fn kt_tangle_closes_to_one_component() {
        for r in [-3, -2, 1, 2, 3] {
            assert_eq!(kt_tangle(r).unwrap().numerator().unwrap().n_components(), 1);
        }
    }

    #[test]
    fn pretzel_with_two_even_columns_is_a_two_component_link() {
        assert_eq!(pretzel(&[-2, 3, 2, -3]).unwrap().n_components(), 2);
        assert_eq!(pretzel(&[-2, 3, -3, 2]).unwrap().n_components(), 2);
    }

    #[test]
    fn kt_and_conway_are_knots_with_documented_crossing_counts() {
        for (r, n) in [(2, 1), (2, -1), (3, 1), (2, 2)] {
            let k = kt(r, n).unwrap();
            let c = conway(r, n).unwrap();
            assert_eq!(k.n_components(), 1, "kt({r},{n})");
            assert_eq!(c.n_components(), 1, "conway({r},{n})");
            let expected = (2 * r.abs() + 2 * (r + 1).abs() + 2 * n.abs()) as usize;
            assert_eq!(k.n_crossings(), expected);
            assert_eq!(c.n_crossings(), expected);
        }
    }

    #[test]
    fn sample_closures() {
        assert_eq!(sample_tangle(1).unwrap().numerator().unwrap().n_components(), 1);
        assert_eq!(sample_tangle(2).unwrap().numerator().unwrap().n_components(), 1);
        assert_eq!(sample_tangle(3).unwrap().numerator().unwrap().n_components(), 2);
        assert!(sample_tangle(4).is_err());
    }
}
