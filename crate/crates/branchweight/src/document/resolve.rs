use std::collections::{BTreeMap, BTreeSet};

use branchweight_core::branched::{
    validate, ArcEnd, BranchArc, BranchedSurface, Endpoint, Role, Sector, Side, Terminal, TriplePoint,
};
use branchweight_core::dividing::{DividingSet, FaceModel, Slot};
use branchweight_core::fibered::{
    weight_of, AdjustedStructure, Angle, AngleFunction, FiberedDomain, FiberedError, VerticalAnnulus,
};
use branchweight_core::triangulation::{
    HolonomyData, PlacedPrism, Prism, PrismConfiguration, ShiftMatching, SlotBound, Step, Tetrahedron, VerticalFace,
};
use branchweight_core::WeightVector;

use super::*;

#[derive(Debug, Clone)]
pub struct ResolvedSurface {
    pub id: String,
    pub surface: BranchedSurface,
    pub weights: BTreeMap<String, WeightVector>,
}

#[derive(Debug, Clone)]
pub struct ResolvedTetrahedron {
    pub tetrahedron: Tetrahedron,
    pub holonomy: Option<HolonomyData>,
    pub extra_circuits: Vec<Vec<Step>>,
}

#[derive(Debug, Clone)]
pub struct Ensemble {
    pub id: String,
    pub domain: usize,
    pub base: AdjustedStructure,
    pub structures: Vec<AdjustedStructure>,
    pub cap: Option<Angle>,
}

/// The core objects behind a document, in document order.
#[derive(Debug, Clone, Default)]
pub struct Resolved {
    pub surfaces: Vec<ResolvedSurface>,
    pub domains: Vec<(String, FiberedDomain)>,
    pub tetrahedra: Vec<ResolvedTetrahedron>,
    pub ensembles: Vec<Ensemble>,
    pub configurations: Vec<PrismConfiguration>,
}

impl Resolved {
    pub fn surface(&self, id: &str) -> Option<&ResolvedSurface> {
        self.surfaces.iter().find(|s| s.id == id)
    }

    pub fn tetrahedron(&self, id: usize) -> Option<&ResolvedTetrahedron> {
        self.tetrahedra.iter().find(|t| t.tetrahedron.id == id)
    }

    pub fn ensemble(&self, id: &str) -> Option<&Ensemble> {
        self.ensembles.iter().find(|e| e.id == id)
    }
}

fn unique(kind: &'static str, ids: impl Iterator<Item = String>) -> Result<(), DocError> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id.clone()) {
            return Err(DocError::Reference { kind, id, problem: "is defined twice" });
        }
    }
    Ok(())
}

fn endpoint(e: EndpointDoc) -> Endpoint {
    match e {
        EndpointDoc::Triple(t) => Endpoint::Triple(t),
        EndpointDoc::Boundary(p) => Endpoint::Boundary(p),
        EndpointDoc::Closed => Endpoint::Closed,
    }
}

fn role(r: RoleDoc) -> Role {
    match r {
        RoleDoc::Merged => Role::Merged,
        RoleDoc::Upper => Role::Upper,
        RoleDoc::Lower => Role::Lower,
    }
}

fn arc_end(e: ArcEndDoc) -> ArcEnd {
    let terminal = match e.terminal {
        TerminalDoc::Start => Terminal::Start,
        TerminalDoc::End => Terminal::End,
    };
    ArcEnd { arc: e.arc, terminal }
}

pub(crate) fn branched_surface(d: &BranchedSurfaceDoc) -> BranchedSurface {
    let side = |s: &SideDoc| match *s {
        SideDoc::Branch { arc, role: r, reversed, flipped } => Side::Branch { arc, role: role(r), reversed, flipped },
        SideDoc::Free { from, to } => Side::Free { from: endpoint(from), to: endpoint(to) },
    };
    BranchedSurface {
        name: d.id.clone(),
        sectors: d
            .sectors
            .iter()
            .map(|s| Sector {
                euler_char: s.euler_char,
                orientable: s.orientable,
                boundary_cycles: s.boundary_cycles.iter().map(|c| c.iter().map(side).collect()).collect(),
            })
            .collect(),
        branch_arcs: d
            .branch_arcs
            .iter()
            .map(|a| BranchArc {
                merged: a.merged,
                upper: a.upper,
                lower: a.lower,
                start: endpoint(a.start),
                end: endpoint(a.end),
            })
            .collect(),
        triple_points: d.triple_points.iter().map(|t| TriplePoint { strands: t.strands.map(|s| s.map(arc_end)) }).collect(),
        boundary_points: d.boundary_points,
    }
}

fn rule_of_fibered(e: &FiberedError) -> &'static str {
    match e {
        FiberedError::Invalid(_) => "quotient validity",
        FiberedError::Overcovered { .. } => "at most two vertical annuli per arc",
        FiberedError::NotSingular { .. } => "every arc is singular",
        FiberedError::DanglingArc { .. } => "dangling arc reference",
        FiberedError::LengthMismatch { .. } => "angle table length",
        FiberedError::NonPositive { .. } => "positive angles",
        FiberedError::NotWholeTurns { .. } => "whole-turn difference",
        FiberedError::NotAdmissible { .. } => "switch equation",
        FiberedError::BelowBound { .. } => "weight lower bound",
        FiberedError::CapExceeded { .. } => "cap",
        FiberedError::BadSite(_) => "prune site",
        FiberedError::Overflow => "overflow",
    }
}

fn fibered(e: FiberedError, what: &str) -> DocError {
    DocError::invariant("fibered_domain", rule_of_fibered(&e), format!("{what}: {e}"))
}

pub fn parse_angle(s: &str) -> Option<Angle> {
    s.trim().parse::<Angle>().ok()
}

fn structure(d: &StructureDoc, ensemble: &str) -> Result<AdjustedStructure, DocError> {
    let values = d
        .angles
        .iter()
        .map(|a| {
            parse_angle(a).ok_or_else(|| {
                DocError::invariant(
                    "fibered_domain",
                    "angle syntax",
                    format!("ensemble {ensemble}, structure {}: '{a}' is not a rational number", d.label),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let angle = AngleFunction::new(values).map_err(|e| fibered(e, &format!("ensemble {ensemble}, structure {}", d.label)))?;
    Ok(AdjustedStructure::new(d.label.clone(), angle))
}

fn tetrahedron(d: &TetrahedronDoc) -> Result<ResolvedTetrahedron, DocError> {
    let ctx = |m: &str| format!("tetrahedron {}: {m}", d.id);
    if d.faces.len() != 4 {
        return Err(DocError::invariant("triangulation_complex", "four faces", ctx(&format!("has {} faces", d.faces.len()))));
    }
    let mut faces = Vec::with_capacity(4);
    let mut sets = Vec::with_capacity(4);
    for (i, f) in d.faces.iter().enumerate() {
        let mut model = FaceModel::new(i, f.slots);
        model.reversed = f.reversed;
        let arcs = f.dividing_set.iter().map(|[a, b]| (Slot::new(a[0], a[1]), Slot::new(b[0], b[1]))).collect();
        let set = DividingSet::new(&model, arcs)
            .map_err(|e| DocError::invariant("dividing_set_calculus", "dividing set", ctx(&format!("face {i}: {e}"))))?;
        faces.push(model);
        sets.push(set);
    }
    let faces: [FaceModel; 4] = faces.try_into().expect("four faces");
    let sets: [DividingSet; 4] = sets.try_into().expect("four faces");
    let tetrahedron = Tetrahedron::new(d.id, faces, sets)
        .map_err(|e| DocError::invariant("triangulation_complex", "face gluing", ctx(&e.to_string())))?;
    let (holonomy, extra_circuits) = match &d.holonomy {
        None => (None, Vec::new()),
        Some(h) => {
            for m in &h.matchings {
                if m.edge >= 6 || m.from_face >= 4 || m.to_face >= 4 {
                    return Err(DocError::Reference {
                        kind: "matching",
                        id: format!("{}:{}>{}@{}", d.id, m.from_face, m.to_face, m.edge),
                        problem: "names a missing face or edge",
                    });
                }
            }
            let data = HolonomyData {
                matchings: h
                    .matchings
                    .iter()
                    .map(|m| ShiftMatching {
                        edge: m.edge,
                        from_face: m.from_face,
                        to_face: m.to_face,
                        offset: m.offset,
                        domain: (m.domain[0], m.domain[1]),
                    })
                    .collect(),
            };
            let circuits = h.circuits.iter().map(|c| c.iter().map(|s| Step { face: s.face, edge: s.edge }).collect()).collect();
            (Some(data), circuits)
        }
    };
    Ok(ResolvedTetrahedron { tetrahedron, holonomy, extra_circuits })
}

fn bound(b: SlotBoundDoc) -> SlotBound {
    match b {
        SlotBoundDoc::Slot(s) => SlotBound::Slot(s),
        SlotBoundDoc::Safety => SlotBound::Safety,
    }
}

fn configuration(d: &PrismConfigurationDoc) -> PrismConfiguration {
    PrismConfiguration {
        tetrahedron: d.tetrahedron,
        prisms: d
            .prisms
            .iter()
            .map(|p| PlacedPrism {
                prism: match p.prism {
                    PrismDoc::Corner(v) => Prism::Corner(v),
                    PrismDoc::Diagonal(k) => Prism::Diagonal(k),
                },
                faces: p
                    .faces
                    .iter()
                    .map(|v| VerticalFace { face: v.face, vertex: v.vertex, from: bound(v.from), to: bound(v.to) })
                    .collect(),
            })
            .collect(),
    }
}

impl ComplexDocument {
    /// Builds and checks every core object.
    pub fn resolve(&self) -> Result<Resolved, DocError> {
        unique("branched surface", self.branched_surfaces.iter().map(|s| s.id.clone()))?;
        unique("fibered domain", self.fibered_domains.iter().map(|s| s.id.clone()))?;
        unique("tetrahedron", self.tetrahedra.iter().map(|t| t.id.to_string()))?;
        unique("ensemble", self.ensembles.iter().map(|s| s.id.clone()))?;

        let mut out = Resolved::default();
        for d in &self.branched_surfaces {
            let surface = branched_surface(d);
            let report = validate(&surface);
            if let Some(v) = report.violations.first() {
                return Err(DocError::invariant("branched_surface_core", v.rule.name(), format!("surface {}: {v}", d.id)));
            }
            let mut weights = BTreeMap::new();
            for (name, w) in &d.weights {
                let w = WeightVector::new(w.clone());
                if w.len() != surface.sector_count() {
                    return Err(DocError::invariant(
                        "branched_surface_core",
                        "weight length",
                        format!("surface {}, weight {name}: {} entries for {} sectors", d.id, w.len(), surface.sector_count()),
                    ));
                }
                if let Some(arc) = surface.violated_switch(&w) {
                    return Err(DocError::invariant(
                        "branched_surface_core",
                        "switch equation",
                        format!("surface {}, weight {name}: fails at arc {arc}", d.id),
                    ));
                }
                weights.insert(name.clone(), w);
            }
            out.surfaces.push(ResolvedSurface { id: d.id.clone(), surface, weights });
        }

        for d in &self.fibered_domains {
            let s = out.surface(&d.surface).ok_or_else(|| DocError::Reference {
                kind: "branched surface",
                id: d.surface.clone(),
                problem: "is not defined",
            })?;
            let fd = FiberedDomain {
                surface: s.surface.clone(),
                annuli: d.vertical_annuli.iter().map(|a| VerticalAnnulus { arcs: a.arcs.clone(), concave: a.concave }).collect(),
            };
            fd.check().map_err(|e| fibered(e, &format!("domain {}", d.id)))?;
            out.domains.push((d.id.clone(), fd));
        }

        for d in &self.tetrahedra {
            out.tetrahedra.push(tetrahedron(d)?);
        }

        for d in &self.ensembles {
            let domain = out.domains.iter().position(|(id, _)| *id == d.domain).ok_or_else(|| DocError::Reference {
                kind: "fibered domain",
                id: d.domain.clone(),
                problem: "is not defined",
            })?;
            let base = structure(&d.base, &d.id)?;
            let structures = d.structures.iter().map(|s| structure(s, &d.id)).collect::<Result<Vec<_>, _>>()?;
            let fd = &out.domains[domain].1;
            for x in std::iter::once(&base).chain(&structures) {
                weight_of(fd, x, &base).map_err(|e| fibered(e, &format!("ensemble {}, structure {}", d.id, x.label)))?;
            }
            let cap = match &d.cap {
                None => None,
                Some(c) => Some(parse_angle(c).ok_or_else(|| {
                    DocError::invariant(
                        "fibered_domain",
                        "angle syntax",
                        format!("ensemble {}: cap '{c}' is not a rational number", d.id),
                    )
                })?),
            };
            out.ensembles.push(Ensemble { id: d.id.clone(), domain, base, structures, cap });
        }

        for d in &self.prism_configurations {
            if out.tetrahedron(d.tetrahedron).is_none() {
                return Err(DocError::Reference {
                    kind: "tetrahedron",
                    id: d.tetrahedron.to_string(),
                    problem: "is not defined",
                });
            }
            let c = configuration(d);
            c.check_structure().map_err(|e| {
                DocError::invariant("triangulation_complex", "prism configuration", format!("tetrahedron {}: {e}", d.tetrahedron))
            })?;
            out.configurations.push(c);
        }
        Ok(out)
    }
}
