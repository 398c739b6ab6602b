//! Tetrahedra with dividing data on their faces, fibered-prism selections and
//! configurations, and combinatorial holonomy.
//!
//! Vertices are `0..4`. Face `f` is the face opposite vertex `f`; its vertices
//! `a < b < c` give its edges `0 = ab`, `1 = bc`, `2 = ca`, so local edge 2 runs
//! against the global edge direction. Local corner `k` sits between local
//! edges `k` and `k + 1`, i.e. at vertex `b`, `c`, `a` for `k = 0, 1, 2`.

mod holonomy;

pub use holonomy::{
    corner_circuits, holonomy, validate_holonomy, CircuitOutcome, CircuitReport, CornerModel, CornerStack, CornerTransport,
    HolonomyData, HolonomyError, HolonomyReport, ShiftMatching, Step,
};

use alloc::vec::Vec;

use crate::dividing::{tb_triangulation, DividingError, DividingSet, FaceModel, Slot, TbError, TbReport};

/// Global edges as vertex pairs.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The three pairings of the four vertices, each a pair of opposite edges.
pub const DIAGONALS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

pub fn edge_index(a: usize, b: usize) -> usize {
    let key = (a.min(b), a.max(b));
    EDGES.iter().position(|&e| e == key).expect("distinct vertices below 4")
}

/// Vertices of face `f` in increasing order.
pub fn face_vertices(f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// Global edge of each local edge, and whether it runs against the global direction.
pub fn face_edges(f: usize) -> [(usize, bool); 3] {
    let [a, b, c] = face_vertices(f);
    [(edge_index(a, b), false), (edge_index(b, c), false), (edge_index(c, a), true)]
}

pub fn face_has_edge(f: usize, edge: usize) -> bool {
    let (a, b) = EDGES[edge];
    f != a && f != b
}

/// Local corner of face `f` at vertex `v`.
pub fn local_corner(f: usize, v: usize) -> Option<usize> {
    let [a, b, c] = face_vertices(f);
    match v {
        _ if v == b => Some(0),
        _ if v == c => Some(1),
        _ if v == a => Some(2),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TriangulationError {
    #[error("edge {edge} carries {first} slots in face {face_a} but {second} in face {face_b}")]
    EdgeMismatch { edge: usize, face_a: usize, face_b: usize, first: usize, second: usize },
    #[error("face model {given} stored at position {position}")]
    FaceOrder { position: usize, given: usize },
    #[error("mismatched face reference: face {face}, vertex {vertex}")]
    MismatchedFace { face: usize, vertex: usize },
    #[error("malformed configuration: {0}")]
    Malformed(&'static str),
    #[error(transparent)]
    Dividing(#[from] DividingError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tetrahedron {
    pub id: usize,
    faces: [FaceModel; 4],
    dividing: [DividingSet; 4],
}

impl Tetrahedron {
    /// Face models must be given in face order, with matching slot counts on
    /// every shared edge.
    pub fn new(id: usize, faces: [FaceModel; 4], dividing: [DividingSet; 4]) -> Result<Self, TriangulationError> {
        for (position, f) in faces.iter().enumerate() {
            if f.id != position {
                return Err(TriangulationError::FaceOrder { position, given: f.id });
            }
        }
        for edge in 0..6 {
            let holders: Vec<(usize, usize)> = (0..4)
                .filter(|&f| face_has_edge(f, edge))
                .map(|f| {
                    let local = face_edges(f).iter().position(|&(g, _)| g == edge).expect("face holds edge");
                    (f, faces[f].slots[local])
                })
                .collect();
            let [(fa, na), (fb, nb)] = holders[..] else { unreachable!("each edge lies in two faces") };
            if na != nb {
                return Err(TriangulationError::EdgeMismatch { edge, face_a: fa, face_b: fb, first: na, second: nb });
            }
        }
        Ok(Tetrahedron { id, faces, dividing })
    }

    pub fn face(&self, f: usize) -> &FaceModel {
        &self.faces[f]
    }

    pub fn dividing(&self, f: usize) -> &DividingSet {
        &self.dividing[f]
    }

    pub fn faces(&self) -> impl Iterator<Item = (&FaceModel, &DividingSet)> {
        self.faces.iter().zip(&self.dividing)
    }

    /// The face-local slot at position `p` along global edge `edge`, counted
    /// from the edge's lower vertex.
    pub fn slot_on_edge(&self, f: usize, edge: usize, p: usize) -> Option<Slot> {
        let (local, &(_, against)) = face_edges(f).iter().enumerate().find(|(_, (g, _))| *g == edge)?;
        let n = self.faces[f].slots[local];
        (p < n).then(|| Slot::new(local, if against { n - 1 - p } else { p }))
    }
}

/// Every face carries `m` nested arcs around each of its corners, so each edge
/// has `2m` slots.
pub fn corner_tetrahedron(id: usize, m: usize) -> Tetrahedron {
    let faces: [FaceModel; 4] = core::array::from_fn(|f| FaceModel::new(f, [2 * m; 3]));
    let dividing = core::array::from_fn(|f| {
        let mut arcs = Vec::with_capacity(3 * m);
        for corner in 0..3 {
            for k in 0..m {
                arcs.push((Slot::new(corner, 2 * m - 1 - k), Slot::new((corner + 1) % 3, k)));
            }
        }
        DividingSet::new(&faces[f], arcs).expect("nested corner arcs are planar")
    });
    Tetrahedron::new(id, faces, dividing).expect("uniform slot counts agree")
}

/// A fibered prism of a tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prism {
    /// Triangular prism near a vertex.
    Corner(usize),
    /// Quadrilateral prism separating a pair of opposite edges.
    Diagonal(usize),
}

impl Prism {
    /// The (face, vertex) corners holding this prism's vertical faces.
    pub fn corners(self) -> Vec<(usize, usize)> {
        match self {
            Prism::Corner(v) => (0..4).filter(|&f| f != v).map(|f| (f, v)).collect(),
            Prism::Diagonal(d) => {
                let [(a, b), (c, e)] = DIAGONALS[d];
                // The face opposite one vertex of a pair contains the other pair's edge;
                // the vertical face sits at the remaining vertex.
                alloc::vec![(e, c), (c, e), (b, a), (a, b)]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrismSelection {
    /// Bit `v` set when the corner prism at vertex `v` is selected.
    pub corners: u8,
    pub diagonal: Option<usize>,
}

impl PrismSelection {
    pub fn size(&self) -> usize {
        self.corners.count_ones() as usize + usize::from(self.diagonal.is_some())
    }

    pub fn prisms(&self) -> Vec<Prism> {
        let mut out: Vec<Prism> = (0..4).filter(|v| self.corners >> v & 1 == 1).map(Prism::Corner).collect();
        out.extend(self.diagonal.map(Prism::Diagonal));
        out
    }

    pub fn is_subselection_of(&self, other: &PrismSelection) -> bool {
        self.corners & !other.corners == 0 && (self.diagonal.is_none() || self.diagonal == other.diagonal)
    }
}

/// All 64 selections: corner subsets times no diagonal or one of three.
pub fn enumerate_prism_selections() -> Vec<PrismSelection> {
    let mut out = Vec::with_capacity(64);
    for diagonal in [None, Some(0), Some(1), Some(2)] {
        for corners in 0..16u8 {
            out.push(PrismSelection { corners, diagonal });
        }
    }
    out
}

/// One end of a vertical face: a chord, named by its slot on the later edge of
/// the corner, or the safety triangle itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotBound {
    Slot(usize),
    Safety,
}

/// The vertical face of a prism inside one face: the band between two arcs
/// around a corner, both named by their slot on the later edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VerticalFace {
    pub face: usize,
    pub vertex: usize,
    pub from: SlotBound,
    pub to: SlotBound,
}

impl VerticalFace {
    fn interval(&self) -> Option<(usize, usize)> {
        match (self.from, self.to) {
            (SlotBound::Slot(a), SlotBound::Slot(b)) => Some((a, b)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedPrism {
    pub prism: Prism,
    pub faces: Vec<VerticalFace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrismConfiguration {
    pub tetrahedron: usize,
    pub prisms: Vec<PlacedPrism>,
}

impl PrismConfiguration {
    pub fn empty(tetrahedron: usize) -> Self {
        PrismConfiguration { tetrahedron, prisms: Vec::new() }
    }

    pub fn selection(&self) -> Result<PrismSelection, TriangulationError> {
        let mut s = PrismSelection { corners: 0, diagonal: None };
        for p in &self.prisms {
            match p.prism {
                Prism::Corner(v) if v < 4 => {
                    if s.corners >> v & 1 == 1 {
                        return Err(TriangulationError::Malformed("corner prism listed twice"));
                    }
                    s.corners |= 1 << v;
                }
                Prism::Diagonal(d) if d < 3 => {
                    if s.diagonal.replace(d).is_some() {
                        return Err(TriangulationError::Malformed("more than one diagonal prism"));
                    }
                }
                _ => return Err(TriangulationError::Malformed("unknown prism")),
            }
        }
        Ok(s)
    }

    /// Checks prism kinds, that each prism has one vertical face per corner it
    /// needs, and that intervals are ordered and disjoint with corner prisms
    /// nearer the vertex.
    pub fn check_structure(&self) -> Result<(), TriangulationError> {
        self.selection()?;
        for p in &self.prisms {
            let mut want = p.prism.corners();
            let mut have: Vec<(usize, usize)> = p.faces.iter().map(|v| (v.face, v.vertex)).collect();
            want.sort();
            have.sort();
            if want != have {
                return Err(TriangulationError::Malformed("vertical faces do not match the prism's corners"));
            }
            for v in &p.faces {
                if let Some((a, b)) = v.interval() {
                    if a >= b {
                        return Err(TriangulationError::Malformed("empty vertical face interval"));
                    }
                }
            }
        }
        for (i, p) in self.prisms.iter().enumerate() {
            for q in &self.prisms[i + 1..] {
                for u in &p.faces {
                    for v in &q.faces {
                        if (u.face, u.vertex) != (v.face, v.vertex) {
                            continue;
                        }
                        let (Some(x), Some(y)) = (u.interval(), v.interval()) else { continue };
                        let (inner, outer) = match (p.prism, q.prism) {
                            (Prism::Corner(_), _) => (x, y),
                            _ => (y, x),
                        };
                        if inner.1 >= outer.0 {
                            return Err(TriangulationError::Malformed("overlapping vertical faces"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Why a configuration is not admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// The vertical face reaches into a safety triangle.
    MeetsSafety { prism: usize, face: usize, vertex: usize },
    /// The band between the bounding arcs is not a union of ordinary pieces.
    NotOrdinary { prism: usize, face: usize, vertex: usize, slot: usize },
}

impl core::fmt::Display for Certificate {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match *self {
            Certificate::MeetsSafety { prism, face, vertex } => {
                write!(f, "prism {prism}: vertical face in face {face} at vertex {vertex} meets Λ")
            }
            Certificate::NotOrdinary { prism, face, vertex, slot } => write!(
                f,
                "prism {prism}: vertical face in face {face} at vertex {vertex} is not a union of ordinary pieces at slot {slot}"
            ),
        }
    }
}

/// `Ok(None)` when every vertical face is a union of ordinary pieces avoiding
/// the safety triangles, otherwise the first violation.
pub fn admissible(config: &PrismConfiguration, t: &Tetrahedron) -> Result<Option<Certificate>, TriangulationError> {
    config.check_structure()?;
    for (pi, p) in config.prisms.iter().enumerate() {
        for v in &p.faces {
            if v.face >= 4 {
                return Err(TriangulationError::MismatchedFace { face: v.face, vertex: v.vertex });
            }
            let corner =
                local_corner(v.face, v.vertex).ok_or(TriangulationError::MismatchedFace { face: v.face, vertex: v.vertex })?;
            let Some((lo, hi)) = v.interval() else {
                return Ok(Some(Certificate::MeetsSafety { prism: pi, face: v.face, vertex: v.vertex }));
            };
            let face = t.face(v.face);
            let d = t.dividing(v.face);
            let (early, late) = (corner, (corner + 1) % 3);
            let partner = |k: usize| -> Option<usize> {
                let s = Slot::new(late, k);
                face.position(s)?;
                let (a, b) = d.arcs()[d.arc_at(s)?];
                let other = if a == s { b } else { a };
                (other.edge == early).then_some(other.index)
            };
            let Some(base) = partner(lo) else {
                return Ok(Some(Certificate::NotOrdinary { prism: pi, face: v.face, vertex: v.vertex, slot: lo }));
            };
            for k in lo + 1..=hi {
                if partner(k).map(|x| x + (k - lo)) != Some(base) {
                    return Ok(Some(Certificate::NotOrdinary { prism: pi, face: v.face, vertex: v.vertex, slot: k }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    LessEqual,
    Greater,
    Incomparable,
}

fn contained_in(p: &PrismConfiguration, q: &PrismConfiguration) -> bool {
    p.prisms.iter().all(|a| {
        q.prisms.iter().any(|b| {
            a.prism == b.prism
                && a.faces.iter().all(|u| {
                    b.faces.iter().any(|v| {
                        (u.face, u.vertex) == (v.face, v.vertex)
                            && match (u.interval(), v.interval()) {
                                (Some((x0, x1)), Some((y0, y1))) => y0 <= x0 && x1 <= y1,
                                _ => false,
                            }
                    })
                })
        })
    })
}

/// `p ⪯ q` when every prism of `p` has a prism of the same kind in `q` whose
/// vertical-face intervals contain its own.
pub fn config_order(p: &PrismConfiguration, q: &PrismConfiguration) -> Order {
    if contained_in(p, q) {
        Order::LessEqual
    } else if contained_in(q, p) {
        Order::Greater
    } else {
        Order::Incomparable
    }
}

/// Places a selection on [`corner_tetrahedron`] with `m` arcs per corner: corner
/// prisms on the arcs `0..=m/2-1` nearest the vertex, the diagonal prism on the rest.
pub fn place_selection(tetrahedron: usize, s: &PrismSelection, m: usize) -> PrismConfiguration {
    let h = m / 2;
    let prisms = s
        .prisms()
        .into_iter()
        .map(|prism| {
            let (from, to) = match prism {
                Prism::Corner(_) => (0, h - 1),
                Prism::Diagonal(_) => (h, m - 1),
            };
            let faces = prism
                .corners()
                .into_iter()
                .map(|(face, vertex)| VerticalFace { face, vertex, from: SlotBound::Slot(from), to: SlotBound::Slot(to) })
                .collect();
            PlacedPrism { prism, faces }
        })
        .collect();
    PrismConfiguration { tetrahedron, prisms }
}

/// Thurston-Bennequin total over every face of every tetrahedron.
pub fn tb_aggregate(tetrahedra: &[Tetrahedron]) -> Result<TbReport, TbError> {
    let faces: Vec<(FaceModel, DividingSet)> =
        tetrahedra.iter().flat_map(|t| t.faces().map(|(f, d)| (f.clone(), d.clone()))).collect();
    tb_triangulation(&faces)
}
