//! The shipped documents under `data/` are the canonical renderings of core
//! fixtures. Run with `BLESS=1` to rewrite them.

use std::collections::BTreeMap;
use std::path::PathBuf;

use branchweight::document::{
    BranchedSurfaceDoc, ComplexDocument, EnsembleDoc, FiberedDomainDoc, HolonomyDoc, PlacedPrismDoc, PrismConfigurationDoc,
    PrismDoc, SlotBoundDoc, StructureDoc, TetrahedronDoc, VerticalFaceDoc,
};
use branchweight::{load_str, to_canonical};
use branchweight_core::fibered::{structure_from_weight, AdjustedStructure, AngleFunction, FiberedDomain};
use branchweight_core::fixtures;
use branchweight_core::triangulation::{
    corner_circuits, corner_tetrahedron, edge_index, enumerate_prism_selections, place_selection, HolonomyData, Prism,
    ShiftMatching, SlotBound,
};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

/// Each edge is crossed by the circuits of both its vertices, so a vertex's
/// holonomy is the sum of the offsets on its three edges. Offset −1 on the
/// perfect matching `{01, 23}` gives −1 everywhere; `flat` zeroes edge 23,
/// which leaves holonomy 0 around vertices 2 and 3.
fn corner_holonomy(flat: bool) -> HolonomyData {
    let matched = [edge_index(0, 1), edge_index(2, 3)];
    let mut h = HolonomyData::default();
    for c in corner_circuits() {
        let n = c.len();
        for (k, s) in c.iter().enumerate() {
            let to_face = c[(k + 1) % n].face;
            if h.find(s.edge, s.face, to_face).is_some() {
                continue;
            }
            let offset = if matched.contains(&s.edge) && !(flat && s.edge == matched[1]) { -1 } else { 0 };
            h.matchings.push(ShiftMatching { edge: s.edge, from_face: s.face, to_face, offset, domain: (0, 7) });
        }
    }
    h
}

fn fig1() -> ComplexDocument {
    let b = fixtures::fig1_local();
    let mut s = BranchedSurfaceDoc::from_surface("fig1", &b);
    let gens = fixtures::fig1_generators();
    let mut weights = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        weights.insert(format!("plane{i}"), g.as_slice().to_vec());
    }
    let all = gens.iter().skip(1).fold(gens[0].clone(), |a, g| a.checked_add(g).unwrap());
    weights.insert("planes".into(), all.into_inner());
    weights.insert("zero".into(), vec![0; 6]);
    s.weights = weights;

    let fd = FiberedDomain::over(b);
    let base = AdjustedStructure::new("xi", AngleFunction::from_integers(&[1; 6]).unwrap());
    let mut structures = vec![StructureDoc::from_structure(&base)];
    for (i, g) in gens.iter().enumerate() {
        let x = structure_from_weight(&fd, &base, &g.to_signed(), format!("xi+plane{i}")).unwrap();
        structures.push(StructureDoc::from_structure(&x));
    }
    ComplexDocument {
        branched_surfaces: vec![s],
        fibered_domains: vec![FiberedDomainDoc::from_domain("fig1_domain", "fig1", &fd)],
        ensembles: vec![EnsembleDoc {
            id: "planes".into(),
            domain: "fig1_domain".into(),
            base: StructureDoc::from_structure(&base),
            structures,
            cap: None,
        }],
        ..Default::default()
    }
}

fn cone() -> ComplexDocument {
    let mut s = BranchedSurfaceDoc::from_surface("x3_eq_x1_plus_x2", &fixtures::single_arc());
    s.weights = BTreeMap::from([
        ("left".to_string(), vec![1, 0, 1]),
        ("right".to_string(), vec![0, 1, 1]),
        ("both".to_string(), vec![1, 1, 2]),
        ("double_left".to_string(), vec![2, 0, 2]),
    ]);
    ComplexDocument { branched_surfaces: vec![s], ..Default::default() }
}

fn tori() -> ComplexDocument {
    let mut t = BranchedSurfaceDoc::from_surface("three_tori", &fixtures::fig1_torus());
    let gens = fixtures::fig1_torus_generators();
    for (i, g) in gens.iter().enumerate() {
        t.weights.insert(format!("torus{i}"), g.as_slice().to_vec());
    }
    t.weights.insert("zero".into(), vec![0; 6]);
    t.weights.insert("sum".into(), vec![1, 2, 2, 3, 1, 1]);
    let mut k = BranchedSurfaceDoc::from_surface("klein_bottle", &fixtures::klein_bottle());
    k.weights = BTreeMap::from([("one".to_string(), vec![1]), ("zero".to_string(), vec![0])]);
    ComplexDocument { branched_surfaces: vec![t, k], ..Default::default() }
}

fn tetrahedron(flat: bool, prisms: bool) -> ComplexDocument {
    let t = corner_tetrahedron(0, 4);
    let h = corner_holonomy(flat);
    let mut doc = ComplexDocument {
        tetrahedra: vec![TetrahedronDoc::from_tetrahedron(&t, Some(HolonomyDoc::from_data(&h, &[])))],
        ..Default::default()
    };
    if prisms {
        let full = enumerate_prism_selections().into_iter().max_by_key(|s| s.size()).unwrap();
        {
            let c = place_selection(0, &full, 4);
            doc.prism_configurations.push(PrismConfigurationDoc {
                tetrahedron: c.tetrahedron,
                prisms: c
                    .prisms
                    .iter()
                    .map(|p| PlacedPrismDoc {
                        prism: match p.prism {
                            Prism::Corner(v) => PrismDoc::Corner(v),
                            Prism::Diagonal(d) => PrismDoc::Diagonal(d),
                        },
                        faces: p
                            .faces
                            .iter()
                            .map(|v| {
                                let b = |x: SlotBound| match x {
                                    SlotBound::Slot(s) => SlotBoundDoc::Slot(s),
                                    SlotBound::Safety => SlotBoundDoc::Safety,
                                };
                                VerticalFaceDoc { face: v.face, vertex: v.vertex, from: b(v.from), to: b(v.to) }
                            })
                            .collect(),
                    })
                    .collect(),
            });
        }
    }
    doc
}

fn check(name: &str, doc: ComplexDocument) {
    let text = to_canonical(&doc);
    load_str(&text).unwrap_or_else(|e| panic!("{name} does not load: {e}"));
    let path = data(name);
    if std::env::var_os("BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
    }
    let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(on_disk, text, "{name} is stale; rerun with BLESS=1");
}

#[test]
fn fig1_document() {
    check("fig1.json", fig1());
}

#[test]
fn cone_document() {
    check("cone_x3_eq_x1_plus_x2.json", cone());
}

#[test]
fn tori_document() {
    check("tori.json", tori());
}

#[test]
fn tetrahedron_document() {
    check("tetrahedron.json", tetrahedron(false, true));
}

#[test]
fn zero_holonomy_document() {
    check("zero_holonomy.json", tetrahedron(true, false));
}

#[test]
fn empty_document() {
    check("empty.json", ComplexDocument::default());
}
