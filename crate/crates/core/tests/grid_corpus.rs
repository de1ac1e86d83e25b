mod common;

use common::{euler_matches_alexander, oracle_alexander, read_fixture};
use linkhom::basepoints::{central_vanishing, homology_operators, u_dims, verify_kunneth};
use linkhom::diagrams::io::{parse_text, to_text};
use linkhom::grid::corpus::{corpus, named, unknot_grid};
use linkhom::grid::{gh_tilde, hat_extract, GridComplex, GridDiagram};

const MAX: usize = 9;

#[test]
fn grid_pd_fixtures_match_conversion() {
    for (name, g) in corpus() {
        let text = read_fixture(&format!("grid_pd/{name}.txt"));
        let pd = g.to_pd().unwrap();
        assert_eq!(parse_text(&text).unwrap(), pd, "{name}");
        assert_eq!(to_text(&pd), text, "{name}");
        assert_eq!(pd.n_components(), g.n_components(), "{name}");
        assert_eq!(pd.writhe(), g.writhe(), "{name}");
    }
}

/// One pass per grid: the size-9 complexes dominate the runtime.
#[test]
fn hat_matches_alexander_and_tensors_up_to_tilde() {
    for (name, g) in corpus() {
        if g.n() > MAX {
            continue;
        }
        let alexander = oracle_alexander(&format!("grid/{name}")).unwrap();
        let rep = hat_extract(&GridComplex::new(&g, MAX).unwrap()).unwrap();
        assert!(rep.tensor_identity, "{name}: {rep:?}");
        let chi = rep.hat.euler_characteristic();
        assert!(euler_matches_alexander(&chi, &alexander, g.n_components()), "{name}: {chi:?} vs {alexander:?}");
    }
}

#[test]
fn translation_does_not_change_tilde() {
    for name in ["trefoil", "figure8", "hopf"] {
        let g = named(name).unwrap();
        let base = gh_tilde(&g, MAX).unwrap();
        for (dr, dc) in [(1, 0), (0, 2), (3, 1)] {
            assert_eq!(gh_tilde(&g.translate(dr, dc), MAX).unwrap(), base, "{name} by ({dr}, {dc})");
        }
    }
}

#[test]
fn grids_round_trip_through_text_and_json() {
    for (name, g) in corpus() {
        assert_eq!(GridDiagram::parse(&g.to_text()).unwrap(), g, "{name}");
        assert_eq!(GridDiagram::from_json(&g.to_json()).unwrap(), g, "{name}");
    }
}

#[test]
fn unlinks_have_vanishing_central_action() {
    for g in [unknot_grid(2), unknot_grid(3), named("unlink2").unwrap()] {
        let ops = homology_operators(&GridComplex::new(&g, MAX).unwrap()).unwrap();
        let r = central_vanishing(&ops);
        assert!(r.ok(), "{r:?}");
    }
}

#[test]
fn kunneth_for_small_pairs() {
    let u = unknot_grid(2);
    let t = named("trefoil").unwrap();
    let r = verify_kunneth(&t, &u, MAX).unwrap();
    assert!(r.ok(), "{r:?}");
    assert_eq!(r.hat_union, r.hat_1.tensor(&u_dims()));
}

#[test]
fn oversized_grids_are_refused() {
    let g = named("trefoil_sum").unwrap();
    assert!(gh_tilde(&g, g.n() - 1).is_err());
}
