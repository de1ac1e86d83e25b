//! Named planar diagrams used as a reference set. Torus links and the
//! trefoil sum are the positive ones (see [`torus2`] for the sign).

use crate::diagrams::families::{pretzel, sample_tangle, torus2, unlink};
use crate::diagrams::tangle::Tangle;
use crate::diagrams::PDCode;

fn build(name: &str) -> PDCode {
    let pd = match name {
        "unknot" => Ok(unlink(1)),
        "unknot_kinked" => torus2(1),
        "unlink2" => Ok(unlink(2)),
        "hopf" => torus2(-2),
        "hopf_negative" => torus2(2),
        "trefoil" => torus2(-3),
        "trefoil_left" => torus2(3),
        "t24" => torus2(-4),
        "t25" => torus2(-5),
        "figure8" => Tangle::rational(5, 2).and_then(|t| t.numerator()),
        "pretzel_m2_3_3" => pretzel(&[-2, 3, 3]),
        "sample_1" => sample_tangle(1).and_then(|t| t.numerator()),
        "sample_3" => sample_tangle(3).and_then(|t| t.numerator()),
        "granny" => torus2(-3).and_then(|a| a.connected_sum(0, &a, 0)),
        "hopf_unknot" => torus2(-2).map(|h| h.disjoint_union(&unlink(1))),
        _ => unreachable!("unknown corpus name"),
    };
    pd.expect("corpus diagrams are valid")
}

pub const NAMES: [&str; 15] = [
    "unknot",
    "unknot_kinked",
    "unlink2",
    "hopf",
    "hopf_negative",
    "trefoil",
    "trefoil_left",
    "t24",
    "t25",
    "figure8",
    "pretzel_m2_3_3",
    "sample_1",
    "sample_3",
    "granny",
    "hopf_unknot",
];

/// Every named diagram, in [`NAMES`] order.
pub fn pd_corpus() -> Vec<(&'static str, PDCode)> {
    NAMES.iter().map(|&n| (n, build(n))).collect()
}

pub fn named_pd(name: &str) -> Option<PDCode> {
    NAMES.contains(&name).then(|| build(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_counts() {
        let comps: Vec<(&str, usize)> = pd_corpus().iter().map(|(n, p)| (*n, p.n_components())).collect();
        for (n, c) in comps {
            let want = match n {
                "unlink2" | "hopf" | "hopf_negative" | "t24" | "sample_3" => 2,
                "hopf_unknot" => 3,
                _ => 1,
            };
            assert_eq!(c, want, "{n}");
        }
        assert!(named_pd("nope").is_none());
        assert_eq!(named_pd("trefoil").unwrap().writhe(), 3);
        assert_eq!(named_pd("trefoil_left").unwrap().writhe(), -3);
        assert_eq!(named_pd("hopf").unwrap().writhe(), 2);
    }
}
