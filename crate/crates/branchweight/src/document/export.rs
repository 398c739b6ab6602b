use branchweight_core::branched::{BranchedSurface, Endpoint, Role, Side, Terminal};
use branchweight_core::dividing::{DividingSet, FaceModel};
use branchweight_core::fibered::{AdjustedStructure, FiberedDomain};
use branchweight_core::triangulation::{HolonomyData, Step, Tetrahedron};

use super::*;

fn endpoint(e: Endpoint) -> EndpointDoc {
    match e {
        Endpoint::Triple(t) => EndpointDoc::Triple(t),
        Endpoint::Boundary(p) => EndpointDoc::Boundary(p),
        Endpoint::Closed => EndpointDoc::Closed,
    }
}

impl BranchedSurfaceDoc {
    pub fn from_surface(id: impl Into<String>, b: &BranchedSurface) -> Self {
        let side = |s: &Side| match *s {
            Side::Branch { arc, role, reversed, flipped } => SideDoc::Branch {
                arc,
                role: match role {
                    Role::Merged => RoleDoc::Merged,
                    Role::Upper => RoleDoc::Upper,
                    Role::Lower => RoleDoc::Lower,
                },
                reversed,
                flipped,
            },
            Side::Free { from, to } => SideDoc::Free { from: endpoint(from), to: endpoint(to) },
        };
        BranchedSurfaceDoc {
            id: id.into(),
            sectors: b
                .sectors
                .iter()
                .map(|s| SectorDoc {
                    euler_char: s.euler_char,
                    orientable: s.orientable,
                    boundary_cycles: s.boundary_cycles.iter().map(|c| c.iter().map(side).collect()).collect(),
                })
                .collect(),
            branch_arcs: b
                .branch_arcs
                .iter()
                .map(|a| BranchArcDoc {
                    merged: a.merged,
                    upper: a.upper,
                    lower: a.lower,
                    start: endpoint(a.start),
                    end: endpoint(a.end),
                })
                .collect(),
            triple_points: b
                .triple_points
                .iter()
                .map(|t| TriplePointDoc {
                    strands: t.strands.map(|s| {
                        s.map(|e| ArcEndDoc {
                            arc: e.arc,
                            terminal: match e.terminal {
                                Terminal::Start => TerminalDoc::Start,
                                Terminal::End => TerminalDoc::End,
                            },
                        })
                    }),
                })
                .collect(),
            boundary_points: b.boundary_points,
            weights: BTreeMap::new(),
        }
    }
}

impl FiberedDomainDoc {
    pub fn from_domain(id: impl Into<String>, surface: impl Into<String>, fd: &FiberedDomain) -> Self {
        FiberedDomainDoc {
            id: id.into(),
            surface: surface.into(),
            vertical_annuli: fd.annuli.iter().map(|a| VerticalAnnulusDoc { arcs: a.arcs.clone(), concave: a.concave }).collect(),
        }
    }
}

impl FaceDoc {
    pub fn from_face(face: &FaceModel, d: &DividingSet) -> Self {
        FaceDoc {
            slots: face.slots,
            reversed: face.reversed,
            dividing_set: d.arcs().iter().map(|(a, b)| [[a.edge, a.index], [b.edge, b.index]]).collect(),
        }
    }
}

impl HolonomyDoc {
    pub fn from_data(h: &HolonomyData, circuits: &[Vec<Step>]) -> Self {
        HolonomyDoc {
            matchings: h
                .matchings
                .iter()
                .map(|m| ShiftMatchingDoc {
                    edge: m.edge,
                    from_face: m.from_face,
                    to_face: m.to_face,
                    offset: m.offset,
                    domain: [m.domain.0, m.domain.1],
                })
                .collect(),
            circuits: circuits.iter().map(|c| c.iter().map(|s| StepDoc { face: s.face, edge: s.edge }).collect()).collect(),
        }
    }
}

impl TetrahedronDoc {
    pub fn from_tetrahedron(t: &Tetrahedron, holonomy: Option<HolonomyDoc>) -> Self {
        TetrahedronDoc { id: t.id, faces: t.faces().map(|(f, d)| FaceDoc::from_face(f, d)).collect(), holonomy }
    }
}

impl StructureDoc {
    pub fn from_structure(a: &AdjustedStructure) -> Self {
        StructureDoc { label: a.label.clone(), angles: a.angle.values().iter().map(|v| v.to_string()).collect() }
    }
}
