use num_integer::gcd;
use proptest::prelude::*;

use linkhom::algebra::{BigradedDims, Field};
use linkhom::basepoints::{homology_operators, verify_clifford};
use linkhom::diagrams::families::pretzel;
use linkhom::grid::{gh_tilde, hat_extract, verify_orientation_shift, GridComplex, GridDiagram};
use linkhom::khovanov::{kh, kh_cube, kh_reduced, unknot_dims};
use linkhom::mutation::verify_closure_fraction;

fn grid_strategy(max_n: usize) -> impl Strategy<Value = GridDiagram> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let base: Vec<usize> = (0..n).collect();
            (Just(base.clone()).prop_shuffle(), Just(base).prop_shuffle())
        })
        .prop_filter_map("marking shares a cell", |(x, o)| GridDiagram::new(x, o).ok())
}

fn permutation(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n).prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
}

fn flip(d: &BigradedDims) -> BigradedDims {
    let t: Vec<[i64; 3]> = d.to_triples().iter().map(|t| [-t[0], -t[1], t[2]]).collect();
    BigradedDims::from_triples(&t)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn basepoint_relations_hold_on_random_grids(g in grid_strategy(5)) {
        let ops = homology_operators(&GridComplex::new(&g, 9).unwrap()).unwrap();
        let r = ops.check_relations();
        prop_assert!(r.ok(), "{:?}", r);
    }

    #[test]
    fn tilde_splits_off_v_on_random_grids(g in grid_strategy(5)) {
        let rep = hat_extract(&GridComplex::new(&g, 9).unwrap()).unwrap();
        prop_assert!(rep.tensor_identity);
        prop_assert!(rep.hat.total() >= 1);
    }

    #[test]
    fn grid_writhe_matches_its_planar_diagram(g in grid_strategy(6)) {
        let pd = g.to_pd().unwrap();
        prop_assert_eq!(pd.writhe(), g.writhe());
        prop_assert_eq!(pd.n_components(), g.n_components());
    }

    #[test]
    fn tilde_is_invariant_under_translation(g in grid_strategy(5), dr in 0usize..5, dc in 0usize..5) {
        let n = g.n();
        prop_assert_eq!(gh_tilde(&g.translate(dr % n, dc % n), 9).unwrap(), gh_tilde(&g, 9).unwrap());
    }

    #[test]
    fn reversing_a_component_shifts_delta_by_a_quarter_writhe(g in grid_strategy(5)) {
        let r = verify_orientation_shift(&g, &[0], 9).unwrap();
        prop_assert!(r.ok, "{:?}", r);
    }

    #[test]
    fn clifford_decomposition_for_random_successors(nu in permutation(6)) {
        let r = verify_clifford(&nu, 0);
        prop_assert!(r.ok(), "{:?}", r);
    }

    #[test]
    fn two_bridge_closures_match_prediction(p in -5i64..=5, q in 1i64..=4, r in -5i64..=5, s in 1i64..=4) {
        prop_assume!(gcd(p, q) == 1 && gcd(r, s) == 1);
        let rep = verify_closure_fraction(p, q, r, s).unwrap();
        prop_assert!(rep.ok, "{:?}", rep);
    }

    #[test]
    fn pretzel_khovanov_invariants(cols in prop::collection::vec(-3i64..=3, 2..=3)) {
        prop_assume!(cols.iter().all(|&c| c != 0));
        let pd = pretzel(&cols).unwrap();
        let f2 = kh(&pd, Field::F2).unwrap();
        prop_assert_eq!(&kh_cube(&pd, Field::F2).unwrap(), &f2);
        prop_assert_eq!(kh(&pd.mirror(), Field::F2).unwrap(), flip(&f2));
        let reduced = kh_reduced(&pd, None, Field::F2).unwrap();
        prop_assert_eq!(reduced.tensor(&unknot_dims()), f2);
        prop_assert_eq!(kh(&pd, Field::Q).unwrap(), kh_cube(&pd, Field::Q).unwrap());
    }
}
