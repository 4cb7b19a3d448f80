//! Cross-module pipeline tests and property-based invariants.

use moebius4::construction::{
    audit, canonical_map_check, coverage_check, generate_configuration, nerve, pair_audit,
};
use moebius4::coxeter::{
    abstract_growth, congruence_quotient, enumerate, torsion_survival_check, GroupPresentation,
};
use moebius4::cubical::{CubicalCell, CubicalComplex2};
use moebius4::rat::rat;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn axis_pair(idx: usize) -> (usize, usize) {
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)][idx % 6]
}

fn square_strategy() -> impl Strategy<Value = CubicalCell> {
    (
        prop::array::uniform4(-2i64..=2),
        0usize..6,
    )
        .prop_map(|(anchor, idx)| {
            let (a, b) = axis_pair(idx);
            CubicalCell::square(anchor, a, b)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subdivision_maximal_simplex_count(squares in prop::collection::vec(square_strategy(), 1..6)) {
        let k = CubicalComplex2::build_complex(&squares).unwrap();
        let beta = k.barycentric_subdivision();
        let (_, _, square_count) = k.census();
        // every edge of a square complex lies in a square, so the maximal
        // simplices are exactly the 8 triangles per square
        prop_assert_eq!(beta.maximal_simplices().len(), 8 * square_count);
        prop_assert!(beta.is_downward_closed());
        prop_assert_eq!(beta.vertex_count(), k.cell_count());
    }

    #[test]
    fn subdivision_functorial(squares in prop::collection::vec(square_strategy(), 2..6), keep in 1usize..3) {
        let k = CubicalComplex2::build_complex(&squares).unwrap();
        let sub_squares: Vec<CubicalCell> = squares.iter().take(keep).copied().collect();
        let k_sub = CubicalComplex2::build_complex(&sub_squares).unwrap();
        let beta = k.barycentric_subdivision();
        let beta_sub = k_sub.barycentric_subdivision();
        let kept: BTreeSet<u32> = k_sub
            .cells()
            .map(|c| beta.vertex_at(c.barycenter_doubled()).unwrap())
            .collect();
        prop_assert_eq!(beta.induced_subcomplex(&kept), beta_sub);
    }

    #[test]
    fn ball_centers_biject_with_subdivision_vertices(squares in prop::collection::vec(square_strategy(), 1..6)) {
        let k = CubicalComplex2::build_complex(&squares).unwrap();
        let conf = generate_configuration(&k).unwrap();
        let beta = k.barycentric_subdivision();
        prop_assert_eq!(conf.ball_count(), beta.vertex_count());
        for (i, ball) in conf.balls().iter().enumerate() {
            // cells sort identically on both sides, so indices line up
            prop_assert_eq!(beta.position_doubled(i as u32), ball.cell.barycenter_doubled());
        }
    }

    #[test]
    fn audit_has_no_violations_on_square_complexes(squares in prop::collection::vec(square_strategy(), 1..5)) {
        let k = CubicalComplex2::build_complex(&squares).unwrap();
        let conf = generate_configuration(&k).unwrap();
        let pairs = pair_audit(&conf.spheres()).unwrap();
        prop_assert!(pairs.violations.is_empty());
        // every documented pair kind agrees except midpoint-vertex, which is
        // documented π/3 but computes π/2
        let report = audit(&conf);
        for row in &report.angle_expectations {
            match row.kind.label() {
                "midpoint-vertex (incident)" => prop_assert_eq!(row.agrees, Some(false)),
                "center-center" => prop_assert_eq!(row.agrees, None),
                _ => prop_assert_eq!(row.agrees, Some(true), "kind {}", row.kind.label()),
            }
        }
    }

    #[test]
    fn nerve_simplices_map_to_flags_or_counterexamples(squares in prop::collection::vec(square_strategy(), 1..4)) {
        let k = CubicalComplex2::build_complex(&squares).unwrap();
        let conf = generate_configuration(&k).unwrap();
        let check = canonical_map_check(&conf, &k);
        if !check.isomorphic {
            // a counterexample must be exact: either a nerve simplex whose
            // cells are not a chain, or a subdivision simplex whose balls
            // share no point
            match check.counterexample.unwrap() {
                moebius4::construction::MapCounterexample::NerveSimplexNotInSubdivision { cells, certificate } => {
                    prop_assert!(certificate.has_common_point);
                    let mut sorted = cells.clone();
                    sorted.sort_by_key(|c| c.dim());
                    let is_chain = sorted.windows(2).all(|w| w[0] != w[1] && w[0].is_face_of(&w[1]));
                    prop_assert!(!is_chain);
                }
                moebius4::construction::MapCounterexample::SubdivisionSimplexNotInNerve { certificate, .. } => {
                    prop_assert!(!certificate.has_common_point);
                }
                moebius4::construction::MapCounterexample::VertexSetsDiffer { .. } => {
                    prop_assert!(false, "square complexes always biject");
                }
            }
        }
    }
}

#[test]
fn perpendicular_squares_break_the_canonical_map() {
    // two squares sharing an edge but spanning different planes: their
    // center balls meet at π/3 while the square cells form no chain
    let k = CubicalComplex2::build_complex(&[
        CubicalCell::square([0, 0, 0, 0], 0, 1),
        CubicalCell::square([1, 0, 0, 0], 1, 2),
    ])
    .unwrap();
    let conf = generate_configuration(&k).unwrap();
    let check = canonical_map_check(&conf, &k);
    assert!(!check.isomorphic);
    match check.counterexample.unwrap() {
        moebius4::construction::MapCounterexample::NerveSimplexNotInSubdivision {
            cells,
            certificate,
        } => {
            assert!(cells.iter().all(|c| c.dim() == 2));
            assert_eq!(certificate.min_excess, rat(-1, 24));
        }
        other => panic!("unexpected counterexample {other:?}"),
    }
}

#[test]
fn two_square_pipeline_end_to_end() {
    // coplanar squares sharing an edge: the canonical map stays an
    // isomorphism and the whole pipeline passes
    let k = CubicalComplex2::build_complex(&[
        CubicalCell::square([0, 0, 0, 0], 0, 1),
        CubicalCell::square([1, 0, 0, 0], 0, 1),
    ])
    .unwrap();
    let conf = generate_configuration(&k).unwrap();
    assert_eq!(conf.ball_count(), 15);

    let report = audit(&conf);
    assert!(report.pairs.violations.is_empty());
    assert!(report.nerve_iso.isomorphic, "{:?}", report.nerve_iso.counterexample);

    let coverage = coverage_check(&conf, &k, &rat(1, 8)).unwrap();
    assert!(coverage.covered(), "uncovered: {:?}", coverage.uncovered);

    let pres = GroupPresentation::from_pair_audit(&report.pairs).unwrap();
    let relations = moebius4::coxeter::verify_relations(&conf.spheres(), &pres);
    assert!(relations.ok());

    let matrix_growth = moebius4::coxeter::enumerate_growth(&conf.spheres(), 2, 100_000, 0);
    let word_growth = abstract_growth(&pres, 2, 100_000);
    assert_eq!(matrix_growth.growth, word_growth.growth);
    assert!(matrix_growth.lorentz_ok);

    let quotient = congruence_quotient(&conf.spheres(), &pres, 7, 5_000, 0).unwrap();
    assert!(quotient.relations_ok);
    assert!(quotient.functoriality.ok);
    let torsion = torsion_survival_check(&conf.spheres(), &quotient, 2, 100_000, 60);
    assert!(torsion.ok());
}

#[test]
fn nerve_respects_max_dim() {
    let k = CubicalComplex2::build_complex(&[CubicalCell::square([0, 0, 0, 0], 0, 1)]).unwrap();
    let conf = generate_configuration(&k).unwrap();
    let n1 = nerve(&conf, 1);
    assert_eq!(n1.f_vector(), vec![9, 16]);
    let n2 = nerve(&conf, 2);
    assert_eq!(n2.f_vector(), vec![9, 16, 8]);
}

#[test]
fn enumerate_words_reproduce_matrices_after_reload() {
    // elements transport across a serialization boundary via their words
    let k = CubicalComplex2::build_complex(&[CubicalCell::square([0, 0, 0, 0], 0, 1)]).unwrap();
    let conf = generate_configuration(&k).unwrap();
    let spheres = conf.spheres();
    let e = enumerate(&spheres, 2, 100_000, 0);
    let gens: Vec<moebius4::MoebiusMatrix> = spheres
        .iter()
        .map(moebius4::inversive::reflection_matrix)
        .collect();
    for el in &e.elements {
        let rebuilt = el
            .word
            .iter()
            .fold(moebius4::MoebiusMatrix::identity(), |acc, &g| {
                acc.mul(&gens[g as usize])
            });
        assert_eq!(rebuilt, el.matrix);
        assert!(rebuilt.is_lorentz());
    }
}

#[test]
fn report_serialization_is_stable() {
    let k = CubicalComplex2::unit_4cube_2_skeleton();
    let conf = generate_configuration(&k).unwrap();
    let report = audit(&conf);
    let a = serde_json::to_string(&moebius4::report::audit_json(&report, conf.ball_count()))
        .unwrap();
    let report2 = audit(&conf);
    let b = serde_json::to_string(&moebius4::report::audit_json(&report2, conf.ball_count()))
        .unwrap();
    assert_eq!(a, b);
}
