mod common;

use common::{oracle_det, oracle_kh, read_fixture, reduced_determinant};
use linkhom::algebra::Field;
use linkhom::diagrams::corpus::{named_pd, pd_corpus, NAMES};
use linkhom::diagrams::families::{conway, kt};
use linkhom::diagrams::io::{parse_text, to_text};
use linkhom::diagrams::PDCode;
use linkhom::khovanov::{kh, kh_cube, kh_reduced, unknot_dims};

fn first_edge_of_each_component(pd: &PDCode) -> Vec<usize> {
    let comp = pd.edge_component();
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for (e, c) in comp.iter().enumerate() {
        if !seen.contains(c) {
            seen.push(*c);
            out.push(e);
        }
    }
    out
}

#[test]
fn fixture_text_parses_to_the_generated_diagram() {
    for name in NAMES {
        let text = read_fixture(&format!("pd/{name}.txt"));
        let pd = parse_text(&text).unwrap();
        assert_eq!(Some(pd.clone()), named_pd(name), "{name}");
        assert_eq!(parse_text(&to_text(&pd)).unwrap(), pd, "{name}");
    }
}

#[test]
fn f2_dims_match_the_oracle() {
    let mut checked = 0;
    for (name, pd) in pd_corpus() {
        let Some(want) = oracle_kh(name) else { continue };
        assert_eq!(kh(&pd, Field::F2).unwrap(), want, "{name}");
        checked += 1;
    }
    assert!(checked >= 10, "only {checked} oracle comparisons");
}

#[test]
fn mutant_fixtures_match_generators_and_oracle() {
    for (file, pd) in [("kt_2_1", kt(2, 1).unwrap()), ("conway_2_1", conway(2, 1).unwrap())] {
        let fixture = parse_text(&read_fixture(&format!("mutants/{file}.txt"))).unwrap();
        assert_eq!(fixture, pd, "{file}");
        let want = oracle_kh(&format!("mutants/{file}")).unwrap();
        assert_eq!(kh(&pd, Field::F2).unwrap(), want, "{file}");
    }
}

#[test]
fn local_and_cube_engines_agree() {
    for (name, pd) in pd_corpus() {
        if pd.n_crossings() > 8 {
            continue;
        }
        for field in [Field::F2, Field::Fp(3), Field::Q] {
            assert_eq!(kh(&pd, field).unwrap(), kh_cube(&pd, field).unwrap(), "{name} over {field}");
        }
    }
}

#[test]
fn reduced_tensor_unknot_recovers_f2_homology() {
    for (name, pd) in pd_corpus() {
        let full = kh(&pd, Field::F2).unwrap();
        let points = if pd.n_edges() == 0 { vec![0] } else { first_edge_of_each_component(&pd) };
        let reduced: Vec<_> = points.iter().map(|&p| kh_reduced(&pd, Some(p), Field::F2).unwrap()).collect();
        for (p, r) in points.iter().zip(&reduced) {
            assert_eq!(r.tensor(&unknot_dims()), full, "{name} at edge {p}");
            assert_eq!(r, &reduced[0], "{name}: basepoint {p} differs");
        }
    }
}

#[test]
fn reduced_euler_characteristic_gives_the_oracle_determinant() {
    for (name, pd) in pd_corpus() {
        let Some(det) = oracle_det(name) else { continue };
        if pd.n_edges() == 0 {
            continue;
        }
        for field in [Field::Q, Field::Fp(3)] {
            let r = kh_reduced(&pd, None, field).unwrap();
            assert_eq!(reduced_determinant(&r), det, "{name} over {field}");
        }
    }
}

#[test]
fn rational_homology_of_the_trefoil_is_thin_and_rank_four() {
    let pd = named_pd("trefoil").unwrap();
    let q = kh(&pd, Field::Q).unwrap();
    assert_eq!(q.total(), 4);
    // F2 picks up the extra torsion pair.
    assert_eq!(kh(&pd, Field::F2).unwrap().total(), 6);
}

#[test]
fn mirror_negates_both_gradings_over_f2() {
    for (name, pd) in pd_corpus() {
        let m = kh(&pd.mirror(), Field::F2).unwrap();
        let flipped: Vec<[i64; 3]> =
            kh(&pd, Field::F2).unwrap().to_triples().iter().map(|t| [-t[0], -t[1], t[2]]).collect();
        assert_eq!(m, linkhom::algebra::BigradedDims::from_triples(&flipped), "{name}");
    }
}
