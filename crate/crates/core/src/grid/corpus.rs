//! Small grid diagrams for standard links.

use crate::grid::GridDiagram;

/// `O` on the diagonal and `X` shifted `k` columns right. This is the
/// negative torus link `T(k, n - k)`; its mirror is the positive one.
pub fn torus_grid(n: usize, k: usize) -> GridDiagram {
    let o: Vec<usize> = (0..n).collect();
    let x: Vec<usize> = (0..n).map(|r| (r + k) % n).collect();
    GridDiagram::new(x, o).expect("valid torus grid")
}

/// An unknot on an `n × n` grid.
pub fn unknot_grid(n: usize) -> GridDiagram {
    if n == 1 {
        return GridDiagram::new(vec![0], vec![0]).expect("valid");
    }
    torus_grid(n, 1)
}

/// The two-component unlink on the smallest grid without shared cells.
pub fn unlink2_grid() -> GridDiagram {
    unknot_grid(2).disjoint_union(&unknot_grid(2))
}

/// Reflection in a vertical line: the mirror link.
pub fn mirror(g: &GridDiagram) -> GridDiagram {
    let n = g.n();
    let x = g.x().iter().map(|c| n - 1 - c).collect();
    let o = g.o().iter().map(|c| n - 1 - c).collect();
    GridDiagram::new(x, o).expect("mirror of a valid grid")
}

/// The figure-eight knot on a 6 × 6 grid.
pub fn figure8_grid() -> GridDiagram {
    GridDiagram::new(vec![2, 0, 1, 4, 5, 3], vec![4, 3, 5, 0, 2, 1]).expect("valid")
}

/// Named corpus grids.
pub fn corpus() -> Vec<(&'static str, GridDiagram)> {
    let trefoil = mirror(&torus_grid(5, 2));
    vec![
        ("unknot1", unknot_grid(1)),
        ("unknot2", unknot_grid(2)),
        ("unknot3", unknot_grid(3)),
        ("unlink2", unlink2_grid()),
        ("hopf", torus_grid(4, 2)),
        ("trefoil", trefoil.clone()),
        ("trefoil_left", torus_grid(5, 2)),
        ("figure8", figure8_grid()),
        ("t25", mirror(&torus_grid(7, 2))),
        ("trefoil_unknot", trefoil.disjoint_union(&unknot_grid(2))),
        ("trefoil_sum", trefoil.connected_sum(&trefoil).expect("sum of valid grids")),
    ]
}

/// Looks up a corpus grid by name.
pub fn named(name: &str) -> Option<GridDiagram> {
    corpus().into_iter().find(|(k, _)| *k == name).map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_resolve() {
        let names: Vec<_> = corpus().into_iter().map(|(k, _)| k).collect();
        let set: std::collections::BTreeSet<_> = names.iter().collect();
        assert_eq!(set.len(), names.len());
        assert!(named("figure8").is_some());
        assert!(named("nope").is_none());
    }

    #[test]
    fn trefoil_handedness_from_writhe() {
        let right = named("trefoil").unwrap();
        let left = named("trefoil_left").unwrap();
        assert!(right.writhe() > 0, "{}", right.writhe());
        assert!(left.writhe() < 0, "{}", left.writhe());
    }
}
