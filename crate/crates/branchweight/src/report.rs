//! The commands behind the CLI, as functions from a loaded document to a
//! text report.

use std::collections::BTreeSet;
use std::fmt::Write;

use branchweight_core::branched::carried_surface;
use branchweight_core::dividing::{boundary_tb, bypass_surgery, AttachSide, BypassSite};
use branchweight_core::fibered::{prune_to_closed, Angle};
use branchweight_core::hilbert::{brute_force_minimals, minimal_generators};
use branchweight_core::lutz::{classify_generators, enumerate_structures, plan_for, LutzError};
use branchweight_core::triangulation::{
    admissible, corner_circuits, tb_aggregate, validate_holonomy, CircuitOutcome, Step, Tetrahedron,
};
use branchweight_core::WeightVector;

use crate::document::{parse_angle, ComplexDocument, FaceDoc, Resolved, ResolvedSurface};
use crate::graph::{carried_graph, AdjacencyList};

/// Search nodes allowed for the brute-force oracle.
pub const ORACLE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Input(_) => 1,
            CommandError::Failed(_) => 2,
        }
    }
}

fn input(m: impl Into<String>) -> CommandError {
    CommandError::Input(m.into())
}

/// Report text plus whether any check failed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub failures: Vec<String>,
}

impl Outcome {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn fail(&mut self, s: impl Into<String>) {
        let s = s.into();
        self.line(format!("FAIL {s}"));
        self.failures.push(s);
    }

    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn select_surface<'a>(r: &'a Resolved, id: Option<&str>) -> Result<&'a ResolvedSurface, CommandError> {
    match id {
        Some(id) => r.surface(id).ok_or_else(|| input(format!("no branched surface '{id}'"))),
        None => r.surfaces.first().ok_or_else(|| input("document has no branched surface")),
    }
}

/// A literal vector such as `1,0,2` or `(1,0,2)`, or the name of a weight
/// stored on the surface.
pub fn weight_spec(s: &ResolvedSurface, spec: &str) -> Result<WeightVector, CommandError> {
    if let Some(w) = s.weights.get(spec) {
        return Ok(w.clone());
    }
    let inner = spec.trim().trim_start_matches('(').trim_end_matches(')');
    let parsed: Result<Vec<u64>, _> = inner.split(',').map(|x| x.trim().parse::<u64>()).collect();
    match parsed {
        Ok(v) if !inner.trim().is_empty() => Ok(WeightVector::new(v)),
        _ => Err(input(format!("'{spec}' is neither a weight vector nor a weight of surface {}", s.id))),
    }
}

fn circuit_text(c: &[Step]) -> String {
    c.iter().map(|s| format!("f{}/e{}", s.face, s.edge)).collect::<Vec<_>>().join(" -> ")
}

fn check_holonomy(out: &mut Outcome, id: usize, r: &crate::document::ResolvedTetrahedron) {
    let Some(h) = &r.holonomy else {
        out.line(format!("tetrahedron {id}: no holonomy data"));
        return;
    };
    let mut circuits: Vec<Vec<Step>> = corner_circuits().into_iter().collect();
    circuits.extend(r.extra_circuits.iter().cloned());
    for c in &circuits {
        let name = format!("tetrahedron {id} circuit {}", circuit_text(c));
        match validate_holonomy(h, std::slice::from_ref(c)) {
            Err(e) => out.fail(format!("{name}: {e}")),
            Ok(rep) => {
                let c = &rep.circuits[0];
                match c.outcome {
                    CircuitOutcome::Pass => out.line(format!("{name}: holonomy -1, pass")),
                    CircuitOutcome::SameFace => out.line(format!("{name}: same-face circuit, not evaluated")),
                    CircuitOutcome::Bennequin => {
                        out.fail(format!("{name}: holonomy 0 violates the Bennequin bound (overtwisted disk)"))
                    }
                    CircuitOutcome::NonMinimal(v) => out.fail(format!("{name}: holonomy {v}, triangulation is not minimal")),
                }
            }
        }
    }
}

/// Every validator over the whole document.
pub fn validate(doc: &ComplexDocument, r: &Resolved) -> Outcome {
    let mut out = Outcome::default();
    out.line(format!("format version {}", doc.format_version));
    for s in &r.surfaces {
        let b = &s.surface;
        out.line(format!(
            "surface {}: valid, {} sectors, {} branch arcs, {} triple points, {} boundary points",
            s.id,
            b.sector_count(),
            b.branch_arcs.len(),
            b.triple_points.len(),
            b.boundary_points
        ));
        for (name, w) in &s.weights {
            out.line(format!("surface {} weight {name} = {w}: admissible", s.id));
        }
    }
    for (id, fd) in &r.domains {
        out.line(format!(
            "domain {id}: quotient valid, {} vertical annuli, singular arcs {:?}",
            fd.annuli.len(),
            fd.singular_arcs()
        ));
    }
    for t in &r.tetrahedra {
        let id = t.tetrahedron.id;
        let tbs: Vec<String> = t.tetrahedron.faces().map(|(f, _)| boundary_tb(f).to_string()).collect();
        out.line(format!("tetrahedron {id}: dividing sets planar, tb per face [{}]", tbs.join(", ")));
        check_holonomy(&mut out, id, t);
    }
    if !r.tetrahedra.is_empty() {
        let ts: Vec<Tetrahedron> = r.tetrahedra.iter().map(|t| t.tetrahedron.clone()).collect();
        match tb_aggregate(&ts) {
            Ok(tb) => out.line(format!("TB = {} over {} faces", tb.total, tb.per_face.len())),
            Err(e) => out.fail(format!("TB: {e}")),
        }
    }
    for (i, c) in r.configurations.iter().enumerate() {
        let t = &r.tetrahedron(c.tetrahedron).expect("checked on load").tetrahedron;
        match admissible(c, t) {
            Ok(None) => out.line(format!("prism configuration {i} on tetrahedron {}: admissible", c.tetrahedron)),
            Ok(Some(cert)) => {
                out.fail(format!("prism configuration {i} on tetrahedron {}: not admissible, {cert}", c.tetrahedron))
            }
            Err(e) => out.fail(format!("prism configuration {i}: {e}")),
        }
    }
    for e in &r.ensembles {
        out.line(format!(
            "ensemble {}: base {} and {} structures adjusted to domain {}",
            e.id,
            e.base.label,
            e.structures.len(),
            r.domains[e.domain].0
        ));
    }
    out.line(if out.is_pass() { "result: pass".to_string() } else { format!("result: {} failure(s)", out.failures.len()) });
    out
}

pub fn hilbert(r: &Resolved, surface: Option<&str>, oracle_bound: Option<u64>) -> Result<Outcome, CommandError> {
    let targets: Vec<&ResolvedSurface> = match surface {
        Some(_) => vec![select_surface(r, surface)?],
        None => r.surfaces.iter().collect(),
    };
    if targets.is_empty() {
        return Err(input("document has no branched surface"));
    }
    let mut out = Outcome::default();
    for s in targets {
        let system = s.surface.switch_system().map_err(|e| CommandError::Failed(e.to_string()))?;
        let g = minimal_generators(&system).map_err(|e| CommandError::Failed(e.to_string()))?;
        out.line(format!("surface {}: {} minimal generators", s.id, g.len()));
        for u in g.basis() {
            out.line(format!("  {u}"));
        }
        if let Some(bound) = oracle_bound {
            let oracle = brute_force_minimals(&system, bound, ORACLE_BUDGET).map_err(|e| input(format!("oracle: {e}")))?;
            let ours: BTreeSet<&WeightVector> = g.basis().iter().filter(|u| u.max_entry() <= bound).collect();
            let theirs: BTreeSet<&WeightVector> = oracle.iter().collect();
            if ours == theirs {
                out.line(format!("surface {}: oracle agrees on {} generators with entries up to {bound}", s.id, theirs.len()));
            } else {
                out.fail(format!(
                    "surface {}: oracle disagrees below {bound}: oracle has {} generators, basis has {}",
                    s.id,
                    theirs.len(),
                    ours.len()
                ));
            }
        }
    }
    Ok(out)
}

pub fn carry(r: &Resolved, surface: Option<&str>, weight: &str) -> Result<(Outcome, AdjacencyList), CommandError> {
    let s = select_surface(r, surface)?;
    let w = weight_spec(s, weight)?;
    let c = carried_surface(&s.surface, &w).map_err(|e| CommandError::Failed(e.to_string()))?;
    let mut out = Outcome::default();
    out.line(format!(
        "surface {} weight {w}: {} component(s), euler characteristic {}",
        s.id,
        c.components.len(),
        c.euler_char()
    ));
    for k in &c.components {
        out.line(format!(
            "  component {}: euler {}, {}, {}, {}, weight {}",
            k.id,
            k.euler_char,
            if k.orientable { "orientable" } else { "non-orientable" },
            if k.closed { "closed" } else { "with boundary" },
            k.classification.name(),
            k.weight
        ));
    }
    Ok((out, carried_graph(&c)))
}

pub fn lutz_plan(r: &Resolved, surface: Option<&str>, base: &str, target: &str) -> Result<Outcome, CommandError> {
    let s = select_surface(r, surface)?;
    let b = weight_spec(s, base)?;
    let t = weight_spec(s, target)?;
    let gens = classify(s)?;
    let mut out = Outcome::default();
    match plan_for(base, &t, &b, &gens) {
        Ok(plan) => {
            out.line(format!("plan from {} to {t}", plan.base));
            for (i, (&n, kind)) in plan.coefficients.iter().zip(gens.kinds()).enumerate() {
                out.line(format!("  generator {i} ({}) {}: {n}", kind.name(), gens.planning_weights()[i]));
            }
        }
        Err(LutzError::ReBaseRequired) => out.line(format!("re-base required: {t} - {b} is not in the cone")),
        Err(e) => return Err(CommandError::Failed(e.to_string())),
    }
    Ok(out)
}

fn classify(s: &ResolvedSurface) -> Result<branchweight_core::lutz::ClassifiedGenerators, CommandError> {
    let system = s.surface.switch_system().map_err(|e| CommandError::Failed(e.to_string()))?;
    let g = minimal_generators(&system).map_err(|e| CommandError::Failed(e.to_string()))?;
    classify_generators(&s.surface, g).map_err(|e| CommandError::Failed(e.to_string()))
}

pub fn lutz_enumerate(r: &Resolved, surface: Option<&str>, base: &str, bound: u64) -> Result<Outcome, CommandError> {
    let s = select_surface(r, surface)?;
    let b = weight_spec(s, base)?;
    let gens = classify(s)?;
    let mut out = Outcome::default();
    for (i, kind) in gens.kinds().iter().enumerate() {
        out.line(format!("generator {i}: {} {}", kind.name(), gens.generators().basis()[i]));
    }
    let variants = gens.base_variants(base, &b).map_err(|e| CommandError::Failed(e.to_string()))?;
    for (label, vb) in variants {
        for w in enumerate_structures(&gens, &vb, bound) {
            out.line(format!("{label}: {w}"));
        }
    }
    Ok(out)
}

pub fn parse_face(spec: &str) -> Result<(usize, usize), CommandError> {
    let bad = || input(format!("face '{spec}' is not of the form TETRAHEDRON:FACE"));
    let (t, f) = spec.split_once(':').ok_or_else(bad)?;
    Ok((t.trim().parse().map_err(|_| bad())?, f.trim().parse().map_err(|_| bad())?))
}

pub fn parse_site(spec: &str) -> Result<BypassSite, CommandError> {
    let bad = || input(format!("site '{spec}' is neither LEFT,MIDDLE,RIGHT nor half:ARC"));
    if let Some(a) = spec.strip_prefix("half:") {
        return Ok(BypassSite::HalfDisk { arc: a.trim().parse().map_err(|_| bad())? });
    }
    let v: Vec<usize> = spec.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
    match v[..] {
        [left, middle, right] => Ok(BypassSite::Strands { left, middle, right }),
        _ => Err(bad()),
    }
}

pub fn parse_side(spec: &str) -> Result<AttachSide, CommandError> {
    match spec {
        "pos" | "+" => Ok(AttachSide::Pos),
        "neg" | "-" => Ok(AttachSide::Neg),
        _ => Err(input(format!("side '{spec}' is neither pos nor neg"))),
    }
}

fn arcs_text(d: &branchweight_core::dividing::DividingSet) -> String {
    d.arcs().iter().enumerate().map(|(i, (a, b))| format!("{i}:{a}-{b}")).collect::<Vec<_>>().join(" ")
}

/// Bypass surgery on one face. Returns the report and the document with the
/// face replaced.
pub fn bypass(
    doc: &ComplexDocument,
    r: &Resolved,
    face: &str,
    site: &str,
    side: &str,
) -> Result<(Outcome, ComplexDocument), CommandError> {
    let (tid, f) = parse_face(face)?;
    let site = parse_site(site)?;
    let side = parse_side(side)?;
    let t = r.tetrahedron(tid).ok_or_else(|| input(format!("no tetrahedron {tid}")))?;
    if f >= 4 {
        return Err(input(format!("face index {f} out of range")));
    }
    let (model, d) = (t.tetrahedron.face(f), t.tetrahedron.dividing(f));
    let s = bypass_surgery(model, d, site, side).map_err(|e| CommandError::Failed(e.to_string()))?;
    let mut out = Outcome::default();
    out.line(format!("face {tid}:{f} before: {}", arcs_text(d)));
    out.line(format!("face {tid}:{f} after:  {}", arcs_text(&s.dividing)));
    out.line(format!("tb(boundary) {} -> {}", boundary_tb(model), boundary_tb(&s.face)));
    match s.reverse {
        Some(BypassSite::Strands { left, middle, right }) => {
            out.line(format!("reversed by the opposite bypass at {left},{middle},{right}"))
        }
        Some(BypassSite::HalfDisk { arc }) => out.line(format!("reversed by the opposite bypass at half:{arc}")),
        None => {}
    }
    let mut new = doc.clone();
    let td = new.tetrahedra.iter_mut().find(|x| x.id == tid).expect("resolved from this document");
    td.faces[f] = FaceDoc::from_face(&s.face, &s.dividing);
    Ok((out, new))
}

pub fn parse_cap(spec: &str) -> Result<Angle, CommandError> {
    parse_angle(spec).ok_or_else(|| input(format!("cap '{spec}' is not a rational number")))
}

pub fn prune(r: &Resolved, ensemble: Option<&str>, cap: Option<Angle>) -> Result<Outcome, CommandError> {
    let e = match ensemble {
        Some(id) => r.ensemble(id).ok_or_else(|| input(format!("no ensemble '{id}'")))?,
        None => r.ensembles.first().ok_or_else(|| input("document has no ensemble"))?,
    };
    let (id, fd) = &r.domains[e.domain];
    let cap = cap.or(e.cap);
    let (closed, steps, classes) =
        prune_to_closed(fd, &e.base, &e.structures, cap).map_err(|err| CommandError::Failed(err.to_string()))?;
    let mut out = Outcome::default();
    out.line(format!(
        "ensemble {} on domain {id}: {steps} prune step(s), {} sectors left, {} class(es)",
        e.id,
        closed.sector_count(),
        classes.len()
    ));
    for c in &classes {
        let mut key = String::new();
        for (s, w) in &c.removed_weights {
            let _ = write!(key, " s{s}={w}");
        }
        let labels: Vec<&str> = c.structures.iter().map(|x| x.label.as_str()).collect();
        out.line(format!("  class{key}: [{}]", labels.join(", ")));
    }
    Ok(out)
}
