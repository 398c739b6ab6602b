use std::path::PathBuf;

use branchweight::document::{parse, ComplexDocument, DocError, FaceDoc, TetrahedronDoc};
use branchweight::{load, load_str, save, to_canonical};
use branchweight_core::dividing::{DividingSet, FaceModel, Slot};
use branchweight_core::triangulation::corner_tetrahedron;
use proptest::prelude::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

const SHIPPED: [&str; 6] =
    ["fig1.json", "cone_x3_eq_x1_plus_x2.json", "tori.json", "tetrahedron.json", "zero_holonomy.json", "empty.json"];

#[test]
fn shipped_documents_round_trip_bit_exact() {
    for name in SHIPPED {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let doc = parse(&text).unwrap();
        assert_eq!(to_canonical(&doc), text, "{name}");
    }
}

#[test]
fn save_then_load_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    for name in SHIPPED {
        let (doc, _) = load(data(name)).unwrap();
        let p = dir.path().join(name);
        save(&doc, &p).unwrap();
        let (again, _) = load(&p).unwrap();
        assert_eq!(again, doc);
        assert!(std::fs::read_to_string(&p).unwrap().ends_with("}\n"));
    }
}

#[test]
fn compact_input_is_canonicalized() {
    let text = std::fs::read_to_string(data("cone_x3_eq_x1_plus_x2.json")).unwrap();
    let doc = parse(&text).unwrap();
    let compact = serde_json::to_string(&doc).unwrap();
    assert_ne!(compact, text);
    assert_eq!(to_canonical(&parse(&compact).unwrap()), text);
}

#[test]
fn fig1_has_six_sectors_and_four_arcs() {
    let (_, r) = load(data("fig1.json")).unwrap();
    let b = &r.surfaces[0].surface;
    assert_eq!(b.sector_count(), 6);
    assert_eq!(b.branch_arcs.len(), 4);
    assert_eq!(b.triple_points.len(), 1);
    assert_eq!(r.domains.len(), 1);
    assert_eq!(r.ensembles[0].structures.len(), 4);
}

#[test]
fn empty_inputs_are_the_empty_complex() {
    for text in ["", "  \n", "{\"format_version\": 1}"] {
        let (doc, r) = load_str(text).unwrap();
        assert_eq!(doc, ComplexDocument::default());
        assert!(r.surfaces.is_empty() && r.tetrahedra.is_empty());
    }
}

#[test]
fn parse_errors_carry_line_and_column() {
    let text = "{\n  \"format_version\": 1,\n  \"tetrahedra\": [,]\n}\n";
    match parse(text) {
        Err(DocError::Parse { line, column, .. }) => {
            assert_eq!(line, 3);
            assert_eq!(column, 18);
        }
        other => panic!("{other:?}"),
    }
    let e = parse("{\"format_version\": 1, \"surprise\": 0}").unwrap_err();
    assert!(matches!(e, DocError::Parse { line: 1, .. }), "{e}");
}

#[test]
fn other_versions_are_rejected() {
    assert_eq!(parse("{\"format_version\": 7}"), Err(DocError::Version(7)));
}

#[test]
fn dangling_references_name_the_id() {
    let mut doc = parse(&std::fs::read_to_string(data("fig1.json")).unwrap()).unwrap();
    doc.fibered_domains[0].surface = "nowhere".into();
    let e = doc.resolve().unwrap_err();
    assert!(matches!(&e, DocError::Reference { id, .. } if id == "nowhere"), "{e}");
    assert!(e.to_string().contains("'nowhere'"));
    assert!(!e.is_validation_failure());

    let mut doc = parse(&std::fs::read_to_string(data("tetrahedron.json")).unwrap()).unwrap();
    doc.prism_configurations[0].tetrahedron = 9;
    assert!(matches!(doc.resolve(), Err(DocError::Reference { kind: "tetrahedron", .. })));

    let mut doc = parse(&std::fs::read_to_string(data("cone_x3_eq_x1_plus_x2.json")).unwrap()).unwrap();
    doc.branched_surfaces.push(doc.branched_surfaces[0].clone());
    assert!(matches!(doc.resolve(), Err(DocError::Reference { problem: "is defined twice", .. })));
}

fn invariant(doc: &ComplexDocument) -> (&'static str, String, String) {
    match doc.resolve() {
        Err(DocError::Invariant { module, rule, detail }) => (module, rule, detail),
        other => panic!("expected an invariant violation, got {other:?}"),
    }
}

#[test]
fn crossing_chords_are_non_planar() {
    let t = corner_tetrahedron(0, 1);
    let mut doc = ComplexDocument { tetrahedra: vec![TetrahedronDoc::from_tetrahedron(&t, None)], ..Default::default() };
    // A planar matching of six slots, then one whose chords e0:0-e1:0 and e0:1-e2:0 cross.
    let face = FaceModel::new(0, [2, 2, 2]);
    let good = DividingSet::new(
        &face,
        vec![(Slot::new(0, 0), Slot::new(2, 1)), (Slot::new(0, 1), Slot::new(1, 0)), (Slot::new(1, 1), Slot::new(2, 0))],
    );
    assert!(good.is_ok());
    doc.tetrahedra[0].faces[0] =
        FaceDoc { slots: [2, 2, 2], reversed: false, dividing_set: vec![[[0, 0], [1, 0]], [[0, 1], [2, 0]], [[1, 1], [2, 1]]] };
    let text = to_canonical(&doc);
    let e = load_str(&text).unwrap_err();
    assert!(e.is_validation_failure());
    assert!(e.to_string().contains("non-planar dividing set"), "{e}");
    let (module, _, detail) = invariant(&doc);
    assert_eq!(module, "dividing_set_calculus");
    assert!(detail.contains("face 0"));
}

#[test]
fn invariant_violations_name_module_and_rule() {
    let base = parse(&std::fs::read_to_string(data("cone_x3_eq_x1_plus_x2.json")).unwrap()).unwrap();

    let mut doc = base.clone();
    doc.branched_surfaces[0].weights.insert("bad".into(), vec![1, 1, 1]);
    let (module, rule, detail) = invariant(&doc);
    assert_eq!((module, rule.as_str()), ("branched_surface_core", "switch equation"));
    assert!(detail.contains("bad"));

    let mut doc = base.clone();
    doc.branched_surfaces[0].weights.insert("short".into(), vec![1, 1]);
    assert_eq!(invariant(&doc).1, "weight length");

    let mut doc = base.clone();
    doc.branched_surfaces[0].branch_arcs[0].merged = 7;
    let (module, rule, _) = invariant(&doc);
    assert_eq!(module, "branched_surface_core");
    assert_eq!(rule, "dangling sector reference");

    let mut doc = base;
    doc.branched_surfaces[0].sectors[0].euler_char = 5;
    assert_eq!(invariant(&doc).1, "sector topology");
}

#[test]
fn fibered_and_triangulation_invariants() {
    let fig1 = parse(&std::fs::read_to_string(data("fig1.json")).unwrap()).unwrap();
    let mut doc = fig1.clone();
    doc.fibered_domains[0].vertical_annuli[1].concave = false;
    assert_eq!(invariant(&doc).0, "fibered_domain");
    assert_eq!(invariant(&doc).1, "every arc is singular");

    let mut doc = fig1.clone();
    doc.ensembles[0].structures[1].angles[0] = "2".into();
    assert_eq!(invariant(&doc).1, "whole-turn difference");

    let mut doc = fig1.clone();
    doc.ensembles[0].structures[1].angles[0] = "-1".into();
    assert_eq!(invariant(&doc).1, "positive angles");

    let mut doc = fig1;
    doc.ensembles[0].cap = Some("one".into());
    assert_eq!(invariant(&doc).1, "angle syntax");

    let tet = parse(&std::fs::read_to_string(data("tetrahedron.json")).unwrap()).unwrap();
    let mut doc = tet.clone();
    doc.tetrahedra[0].faces.pop();
    assert_eq!(invariant(&doc), ("triangulation_complex", "four faces".to_string(), "tetrahedron 0: has 3 faces".to_string()));

    let mut doc = tet;
    doc.prism_configurations[0].prisms.swap(0, 1);
    doc.prism_configurations[0].prisms[0].faces.pop();
    assert_eq!(invariant(&doc).1, "prism configuration");
}

fn weight_doc() -> impl Strategy<Value = ComplexDocument> {
    (proptest::collection::btree_map("[a-z_]{1,8}", 0u64..50, 0..6), 0usize..3).prop_map(|(names, extra)| {
        let text = std::fs::read_to_string(data("cone_x3_eq_x1_plus_x2.json")).unwrap();
        let mut doc = parse(&text).unwrap();
        let s = &mut doc.branched_surfaces[0];
        s.weights.clear();
        for (name, n) in names {
            let m = n + extra as u64;
            s.weights.insert(name, vec![n, m, n + m]);
        }
        doc
    })
}

proptest! {
    #[test]
    fn canonical_text_is_a_fixed_point(doc in weight_doc()) {
        let text = to_canonical(&doc);
        let (again, _) = load_str(&text).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(to_canonical(&again), text);
    }
}
