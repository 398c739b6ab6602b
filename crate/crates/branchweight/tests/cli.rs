use std::path::{Path, PathBuf};
use std::process::Command;

use branchweight::document::parse;
use branchweight_core::branched::carried_surface;
use branchweight_core::fixtures;
use branchweight_core::WeightVector;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn bw(args: &[&str]) -> Out {
    let o = Command::new(env!("CARGO_BIN_EXE_branchweight")).args(args).output().unwrap();
    Out {
        code: o.status.code().unwrap(),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn shipped_documents_validate() {
    for name in ["fig1.json", "cone_x3_eq_x1_plus_x2.json", "tori.json", "tetrahedron.json", "empty.json"] {
        let o = bw(&["validate", s(&data(name))]);
        assert_eq!(o.code, 0, "{name}: {}{}", o.stdout, o.stderr);
        assert!(o.stdout.ends_with("result: pass\n"));
    }
    let o = bw(&["validate", s(&data("fig1.json"))]);
    assert!(o.stdout.contains("surface fig1: valid, 6 sectors, 4 branch arcs"));
}

#[test]
fn zero_holonomy_fails_and_cites_the_circuit() {
    let o = bw(&["validate", s(&data("zero_holonomy.json"))]);
    assert_eq!(o.code, 2);
    let fails: Vec<&str> = o.stdout.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 2);
    for l in fails {
        assert!(l.contains("circuit f0/e5"), "{l}");
        assert!(l.contains("holonomy 0"), "{l}");
    }
}

#[test]
fn tetrahedron_report_has_tb_and_prisms() {
    let o = bw(&["validate", s(&data("tetrahedron.json"))]);
    assert!(o.stdout.contains("TB = 48 over 4 faces"));
    assert!(o.stdout.contains("prism configuration 0 on tetrahedron 0: admissible"));
    assert_eq!(o.stdout.matches("holonomy -1, pass").count(), 4);
}

#[test]
fn cone_basis_has_two_elements() {
    let o = bw(&["hilbert", s(&data("cone_x3_eq_x1_plus_x2.json")), "--oracle-bound", "5"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("2 minimal generators"));
    assert!(o.stdout.contains("  (1,0,1)\n") && o.stdout.contains("  (0,1,1)\n"));
    assert!(o.stdout.contains("oracle agrees on 2 generators"));
}

#[test]
fn carry_writes_the_sheet_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("sheets.txt");
    let o = bw(&["carry", s(&data("tori.json")), "--weight", "sum", "--graph", s(&g)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.matches("closed, torus").count(), 3);
    let text = std::fs::read_to_string(&g).unwrap();
    // One node per sheet; each gluing adds one neighbour to each end.
    let c = carried_surface(&fixtures::fig1_torus(), &WeightVector::new(vec![1, 2, 2, 3, 1, 1])).unwrap();
    assert_eq!(text.lines().count(), 10);
    let edges: usize = text.lines().map(|l| l.split_whitespace().count() - 1).sum();
    assert_eq!(edges, 2 * c.gluings.len());

    let o = bw(&["carry", s(&data("tori.json")), "--weight", "1,1,1"]);
    assert_eq!(o.code, 2);
    let o = bw(&["carry", s(&data("tori.json")), "--weight", "nonsense"]);
    assert_eq!(o.code, 1);
}

#[test]
fn lutz_plans_and_rebases() {
    let doc = s(&data("tori.json")).to_string();
    let o = bw(&["lutz", &doc, "--base", "torus0", "--target", "sum"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("plan from torus0 to (1,2,2,3,1,1)"));
    let o = bw(&["lutz", &doc, "--base", "sum", "--target", "torus0"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("re-base required"));
    let o = bw(&["lutz", &doc, "--surface", "klein_bottle", "--base", "zero", "--target", "3"]);
    assert!(o.stdout.contains("plan from zero+½T0 to (3)"), "{}", o.stdout);
}

#[test]
fn lutz_enumerate_bound_zero_is_the_base_variants() {
    let doc = s(&data("tori.json")).to_string();
    let o = bw(&["lutz", "enumerate", &doc, "--base", "torus1", "--bound", "0"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let structures: Vec<&str> = o.stdout.lines().filter(|l| !l.starts_with("generator")).collect();
    assert_eq!(structures, ["torus1: (0,1,0,1,1,0)"]);
    let o = bw(&["lutz", "enumerate", &doc, "--surface", "klein_bottle", "--base", "zero", "--bound", "0"]);
    let structures: Vec<&str> = o.stdout.lines().filter(|l| !l.starts_with("generator")).collect();
    assert_eq!(structures, ["zero: (0)", "zero+½T0: (1)"]);
    let o = bw(&["lutz", "enumerate", &doc, "--base", "zero"]);
    assert_eq!(o.code, 1);
}

#[test]
fn bypass_round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let twice = dir.path().join("twice.json");
    let o =
        bw(&["bypass", s(&data("tetrahedron.json")), "--face", "0:1", "--site", "0,1,2", "--side", "pos", "--output", s(&once)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rev = o.stdout.lines().find_map(|l| l.strip_prefix("reversed by the opposite bypass at ")).unwrap().to_string();
    // The surgery cuts through the corner prism's band at vertex 0.
    let v = bw(&["validate", s(&once)]);
    assert_eq!(v.code, 2);
    assert!(v
        .stdout
        .contains("FAIL prism configuration 0 on tetrahedron 0: not admissible, prism 0: vertical face in face 1 at vertex 0"));
    assert_eq!(v.stdout.matches("FAIL").count(), 1);
    let o = bw(&["bypass", s(&once), "--face", "0:1", "--site", &rev, "--side", "neg", "--output", s(&twice)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(std::fs::read_to_string(&twice).unwrap(), std::fs::read_to_string(data("tetrahedron.json")).unwrap());

    let o = bw(&["bypass", s(&data("tetrahedron.json")), "--face", "0:1", "--site", "half:0", "--side", "pos"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("not boundary parallel"));
    let o = bw(&["bypass", s(&data("tetrahedron.json")), "--face", "01", "--site", "0,1,2", "--side", "pos"]);
    assert_eq!(o.code, 1);
}

#[test]
fn prune_reports_classes() {
    let o = bw(&["prune", s(&data("fig1.json"))]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("0 sectors left, 4 class(es)"));
    let o = bw(&["prune", s(&data("fig1.json")), "--cap", "2"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("not below the cap 2"));
    let o = bw(&["prune", s(&data("fig1.json")), "--cap", "7/2"]);
    assert_eq!(o.code, 0);
}

#[test]
fn graph_lists_the_locus() {
    let o = bw(&["graph", s(&data("fig1.json"))]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("# branch locus of fig1\n"));
    assert!(o.stdout.contains("t0: b0 b1 b2 b3\n"));
}

#[test]
fn bad_input_exits_one_and_bad_content_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"format_version\": 1,\n  oops\n}\n").unwrap();
    let o = bw(&["validate", s(&broken)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 3, column 3"), "{}", o.stderr);

    let dangling = dir.path().join("dangling.json");
    let mut doc = parse(&std::fs::read_to_string(data("fig1.json")).unwrap()).unwrap();
    doc.ensembles[0].domain = "elsewhere".into();
    branchweight::save(&doc, &dangling).unwrap();
    let o = bw(&["validate", s(&dangling)]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("'elsewhere'"));

    let planar = dir.path().join("crossing.json");
    let text = std::fs::read_to_string(data("tetrahedron.json")).unwrap();
    let mut doc = parse(&text).unwrap();
    doc.tetrahedra[0].faces[2].dividing_set.swap(0, 1);
    let [a, b] = [doc.tetrahedra[0].faces[2].dividing_set[0], doc.tetrahedra[0].faces[2].dividing_set[1]];
    doc.tetrahedra[0].faces[2].dividing_set[0] = [a[0], b[1]];
    doc.tetrahedra[0].faces[2].dividing_set[1] = [b[0], a[1]];
    branchweight::save(&doc, &planar).unwrap();
    let o = bw(&["validate", s(&planar)]);
    assert_eq!(o.code, 2, "{}", o.stdout);
    assert!(o.stderr.contains("non-planar dividing set"), "{}", o.stderr);

    let o = bw(&["validate", s(&dir.path().join("missing.json"))]);
    assert_eq!(o.code, 1);
    assert_eq!(bw(&["nope"]).code, 1);
}
