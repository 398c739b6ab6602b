//! Dividing sets on the hexagon model of a triangular face.
//!
//! A face has three edges, each carrying an ordered list of endpoint slots,
//! separated by the three corner safety triangles, which own no slots. Going
//! once around the boundary counterclockwise visits edge 0, corner 0, edge 1,
//! corner 1, edge 2, corner 2. A dividing set is a non-crossing perfect
//! matching of the slots; isotopy is quotiented away by keeping only the
//! matching.

mod pieces;
mod tb;

pub use pieces::{
    classify_pieces, extremal_components, parallel_components, Extremal, Piece, PieceKind, PieceReport, Segment, Stack,
};
pub use tb::{boundary_tb, edge_tb, tb_from_intersections, tb_triangulation, HalfInt, TbError, TbReport};

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub edge: usize,
    pub index: usize,
}

impl Slot {
    pub fn new(edge: usize, index: usize) -> Self {
        Slot { edge, index }
    }
}

impl core::fmt::Display for Slot {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "e{}:{}", self.edge, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FaceModel {
    pub id: usize,
    /// Slot count on each edge.
    pub slots: [usize; 3],
    /// The face's orientation is opposite to the counterclockwise boundary order.
    pub reversed: bool,
}

impl FaceModel {
    pub fn new(id: usize, slots: [usize; 3]) -> Self {
        FaceModel { id, slots, reversed: false }
    }

    pub fn total_slots(&self) -> usize {
        self.slots.iter().sum()
    }

    /// Position of a slot in the counterclockwise boundary order.
    pub fn position(&self, s: Slot) -> Option<usize> {
        if s.edge >= 3 || s.index >= self.slots[s.edge] {
            return None;
        }
        Some(self.slots[..s.edge].iter().sum::<usize>() + s.index)
    }

    pub fn slot_at(&self, mut pos: usize) -> Slot {
        for (edge, &n) in self.slots.iter().enumerate() {
            if pos < n {
                return Slot { edge, index: pos };
            }
            pos -= n;
        }
        panic!("position beyond the last slot");
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DividingError {
    #[error("slot {0} does not exist on the face")]
    SlotOutOfRange(Slot),
    #[error("arc joins slot {0} to itself")]
    DegenerateArc(Slot),
    #[error("slot {0} is used by two arcs")]
    SlotReused(Slot),
    #[error("slot {0} is not used by any arc")]
    SlotUnused(Slot),
    #[error("non-planar dividing set: arcs {0} and {1} cross")]
    NonPlanar(usize, usize),
    #[error("closed component in a dividing set")]
    ClosedComponent,
    #[error("component with {0} endpoints is not an arc")]
    MalformedComponent(usize),
    #[error("invalid bypass site: {0}")]
    BadSite(String),
    #[error("arc {0} is not boundary parallel")]
    NotParallel(usize),
    #[error("arc {0} is the only dividing arc of a disk")]
    DiskGuard(usize),
    #[error("no third strand next to the half-disk of arc {0}")]
    NoThirdStrand(usize),
    #[error("a half-disk site only takes a positive attachment")]
    WrongSide,
}

/// Arcs in normal form: each arc lists its earlier endpoint first, and arcs
/// are sorted by that endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DividingSet {
    arcs: Vec<(Slot, Slot)>,
}

impl DividingSet {
    pub fn new(face: &FaceModel, arcs: Vec<(Slot, Slot)>) -> Result<Self, DividingError> {
        let n = face.total_slots();
        let mut chords = Vec::with_capacity(arcs.len());
        let mut used = alloc::vec![false; n];
        for &(a, b) in &arcs {
            let pa = face.position(a).ok_or(DividingError::SlotOutOfRange(a))?;
            let pb = face.position(b).ok_or(DividingError::SlotOutOfRange(b))?;
            if pa == pb {
                return Err(DividingError::DegenerateArc(a));
            }
            for (p, s) in [(pa, a), (pb, b)] {
                if core::mem::replace(&mut used[p], true) {
                    return Err(DividingError::SlotReused(s));
                }
            }
            chords.push((pa.min(pb), pa.max(pb)));
        }
        if let Some(p) = used.iter().position(|u| !u) {
            return Err(DividingError::SlotUnused(face.slot_at(p)));
        }
        chords.sort();
        check_planar(&chords)?;
        Ok(DividingSet { arcs: chords.into_iter().map(|(p, q)| (face.slot_at(p), face.slot_at(q))).collect() })
    }

    /// Builds from components listed by their boundary slots; a component
    /// with no endpoints is a closed curve and is rejected.
    pub fn from_components(face: &FaceModel, components: Vec<Vec<Slot>>) -> Result<Self, DividingError> {
        let mut arcs = Vec::with_capacity(components.len());
        for c in components {
            match c.as_slice() {
                [] => return Err(DividingError::ClosedComponent),
                &[a, b] => arcs.push((a, b)),
                other => return Err(DividingError::MalformedComponent(other.len())),
            }
        }
        DividingSet::new(face, arcs)
    }

    pub fn empty() -> Self {
        DividingSet { arcs: Vec::new() }
    }

    pub fn arcs(&self) -> &[(Slot, Slot)] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn arc_at(&self, s: Slot) -> Option<usize> {
        self.arcs.iter().position(|&(a, b)| a == s || b == s)
    }

    fn chords(&self, face: &FaceModel) -> Vec<(usize, usize)> {
        self.arcs.iter().map(|&(a, b)| (face.position(a).expect("valid slot"), face.position(b).expect("valid slot"))).collect()
    }
}

// Sorted chords (p < q) are non-crossing iff the endpoints form a balanced
// parenthesization.
fn check_planar(chords: &[(usize, usize)]) -> Result<(), DividingError> {
    let mut events: Vec<(usize, bool, usize)> = Vec::with_capacity(2 * chords.len());
    for (i, &(p, q)) in chords.iter().enumerate() {
        events.push((p, true, i));
        events.push((q, false, i));
    }
    events.sort();
    let mut stack: Vec<usize> = Vec::new();
    for (_, open, i) in events {
        if open {
            stack.push(i);
        } else {
            let top = stack.pop().expect("closing follows opening");
            if top != i {
                return Err(DividingError::NonPlanar(top.min(i), top.max(i)));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttachSide {
    Pos,
    Neg,
}

impl AttachSide {
    pub fn opposite(self) -> Self {
        match self {
            AttachSide::Pos => AttachSide::Neg,
            AttachSide::Neg => AttachSide::Pos,
        }
    }
}

/// Where a bypass is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BypassSite {
    /// The attaching arc crosses three distinct arcs in this order.
    Strands { left: usize, middle: usize, right: usize },
    /// The attaching arc runs along the edge through a boundary-parallel arc.
    HalfDisk { arc: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surgery {
    pub face: FaceModel,
    pub dividing: DividingSet,
    /// The site at which an opposite-side surgery undoes this one.
    pub reverse: Option<BypassSite>,
}

/// The six endpoints of a strand site: `(top, bottom)` of each strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteEnds {
    pub left: (Slot, Slot),
    pub middle: (Slot, Slot),
    pub right: (Slot, Slot),
}

// `c` lies inside `x`, i.e. in the counterclockwise boundary interval from x.0 to x.1.
fn inside(c: (usize, usize), x: (usize, usize)) -> bool {
    x.0 < c.0 && c.0 < x.1
}

/// Checks a strand site and returns the top and bottom endpoint of each strand.
/// The top endpoint of a crossed arc is the one on the left of the attaching arc.
pub fn site_ends(face: &FaceModel, d: &DividingSet, left: usize, middle: usize, right: usize) -> Result<SiteEnds, DividingError> {
    let chords = d.chords(face);
    let bad = |m: &str| DividingError::BadSite(m.into());
    if left >= chords.len() || middle >= chords.len() || right >= chords.len() {
        return Err(bad("arc index out of range"));
    }
    if left == middle || middle == right || left == right {
        return Err(bad("strands must be three distinct arcs"));
    }
    let (l, m, r) = (chords[left], chords[middle], chords[right]);
    if inside(l, m) == inside(r, m) {
        return Err(bad("the middle arc does not separate the outer two"));
    }
    for (i, &x) in chords.iter().enumerate() {
        if i != left && i != middle && inside(l, x) != inside(m, x) {
            return Err(bad("another arc separates the left and middle strands"));
        }
        if i != middle && i != right && inside(m, x) != inside(r, x) {
            return Err(bad("another arc separates the middle and right strands"));
        }
    }
    // Crossing chord (p, q) from the side holding the interval p..q puts p on the left.
    let ends = |c: (usize, usize), from_inside: bool| {
        let (top, bottom) = if from_inside != face.reversed { (c.0, c.1) } else { (c.1, c.0) };
        (face.slot_at(top), face.slot_at(bottom))
    };
    Ok(SiteEnds { left: ends(l, !inside(m, l)), middle: ends(m, inside(l, m)), right: ends(r, inside(m, r)) })
}

/// Bypass surgery. At a strand site with top/bottom endpoints `t·`, `b·` the
/// positive rule reconnects `{tL,tM}`, `{bM,bR}`, `{bL,tR}` and the negative
/// rule `{bL,bM}`, `{tM,tR}`, `{tL,bR}`. At a half-disk site the
/// boundary-parallel arc and its two slots are removed.
pub fn bypass_surgery(face: &FaceModel, d: &DividingSet, site: BypassSite, side: AttachSide) -> Result<Surgery, DividingError> {
    match site {
        BypassSite::Strands { left, middle, right } => {
            let e = site_ends(face, d, left, middle, right)?;
            let (tl, bl) = e.left;
            let (tm, bm) = e.middle;
            let (tr, br) = e.right;
            let new = match side {
                AttachSide::Pos => [(tl, tm), (bm, br), (bl, tr)],
                AttachSide::Neg => [(bl, bm), (tm, tr), (tl, br)],
            };
            let mut arcs: Vec<(Slot, Slot)> =
                d.arcs.iter().enumerate().filter(|(i, _)| *i != left && *i != middle && *i != right).map(|(_, &a)| a).collect();
            arcs.extend(new);
            let dividing = DividingSet::new(face, arcs)?;
            let find = |s: Slot| dividing.arc_at(s).expect("every slot is used");
            let reverse = match side {
                AttachSide::Pos => BypassSite::Strands { left: find(tl), middle: find(bl), right: find(br) },
                AttachSide::Neg => BypassSite::Strands { left: find(bl), middle: find(tl), right: find(tr) },
            };
            Ok(Surgery { face: face.clone(), dividing, reverse: Some(reverse) })
        }
        BypassSite::HalfDisk { arc } => {
            if side != AttachSide::Pos {
                return Err(DividingError::WrongSide);
            }
            let &(a, b) = d.arcs.get(arc).ok_or_else(|| DividingError::BadSite("arc index out of range".into()))?;
            if a.edge != b.edge || b.index != a.index + 1 {
                return Err(DividingError::NotParallel(arc));
            }
            if d.len() == 1 {
                return Err(DividingError::DiskGuard(arc));
            }
            let e = a.edge;
            if a.index == 0 && b.index + 1 == face.slots[e] {
                return Err(DividingError::NoThirdStrand(arc));
            }
            let mut f = face.clone();
            f.slots[e] -= 2;
            let shift = |s: Slot| if s.edge == e && s.index > b.index { Slot::new(e, s.index - 2) } else { s };
            let arcs = d.arcs.iter().enumerate().filter(|(i, _)| *i != arc).map(|(_, &(x, y))| (shift(x), shift(y))).collect();
            let dividing = DividingSet::new(&f, arcs)?;
            Ok(Surgery { face: f, dividing, reverse: None })
        }
    }
}

/// A boundary-parallel arc: both endpoints are adjacent slots of one edge, so
/// it cuts off a half-disk containing no other slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParallelArc {
    pub arc: usize,
    pub edge: usize,
    /// False when the arc is the whole dividing set of the (disk) face.
    pub usable: bool,
}

pub fn boundary_parallel_arcs(_face: &FaceModel, d: &DividingSet) -> Vec<ParallelArc> {
    d.arcs
        .iter()
        .enumerate()
        .filter(|(_, (a, b))| a.edge == b.edge && b.index == a.index + 1)
        .map(|(arc, (a, _))| ParallelArc { arc, edge: a.edge, usable: d.len() > 1 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(e: usize, i: usize) -> Slot {
        Slot::new(e, i)
    }

    /// Three parallel arcs from edge 0 to edge 1.
    fn stack3() -> (FaceModel, DividingSet) {
        let f = FaceModel::new(0, [3, 3, 0]);
        let d = DividingSet::new(&f, vec![(s(0, 0), s(1, 2)), (s(0, 1), s(1, 1)), (s(0, 2), s(1, 0))]).unwrap();
        (f, d)
    }

    #[test]
    fn crossing_chords_are_rejected() {
        let f = FaceModel::new(0, [2, 2, 0]);
        let err = DividingSet::new(&f, vec![(s(0, 0), s(1, 0)), (s(0, 1), s(1, 1))]).unwrap_err();
        assert!(matches!(err, DividingError::NonPlanar(..)));
        assert!(err.to_string().contains("non-planar dividing set"));
    }

    #[test]
    fn matching_must_be_perfect() {
        let f = FaceModel::new(0, [2, 1, 0]);
        assert_eq!(DividingSet::new(&f, vec![(s(0, 0), s(0, 1))]), Err(DividingError::SlotUnused(s(1, 0))));
        assert_eq!(DividingSet::new(&f, vec![(s(0, 0), s(0, 1)), (s(0, 1), s(1, 0))]), Err(DividingError::SlotReused(s(0, 1))));
        assert_eq!(DividingSet::new(&f, vec![(s(0, 0), s(2, 0))]), Err(DividingError::SlotOutOfRange(s(2, 0))));
    }

    #[test]
    fn closed_components_are_rejected() {
        let f = FaceModel::new(0, [2, 0, 0]);
        assert_eq!(DividingSet::from_components(&f, vec![vec![s(0, 0), s(0, 1)], vec![]]), Err(DividingError::ClosedComponent));
    }

    #[test]
    fn normal_form_ignores_listing_order() {
        let f = FaceModel::new(0, [2, 2, 0]);
        let a = DividingSet::new(&f, vec![(s(1, 1), s(0, 0)), (s(0, 1), s(1, 0))]).unwrap();
        let b = DividingSet::new(&f, vec![(s(0, 1), s(1, 0)), (s(0, 0), s(1, 1))]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_stack_surgery_and_reverse() {
        let (f, d) = stack3();
        let site = BypassSite::Strands { left: 0, middle: 1, right: 2 };
        let up = bypass_surgery(&f, &d, site, AttachSide::Pos).unwrap();
        assert_ne!(up.dividing, d);
        assert_eq!(up.dividing.len(), 3);
        let down = bypass_surgery(&up.face, &up.dividing, up.reverse.unwrap(), AttachSide::Neg).unwrap();
        assert_eq!(down.dividing, d);
    }

    #[test]
    fn site_needs_a_separating_middle() {
        let (f, d) = stack3();
        assert!(matches!(
            bypass_surgery(&f, &d, BypassSite::Strands { left: 0, middle: 2, right: 1 }, AttachSide::Pos),
            Err(DividingError::BadSite(_))
        ));
    }

    #[test]
    fn half_disk_sites() {
        let f = FaceModel::new(0, [4, 2, 0]);
        let d = DividingSet::new(&f, vec![(s(0, 0), s(0, 1)), (s(0, 2), s(1, 1)), (s(0, 3), s(1, 0))]).unwrap();
        let p = boundary_parallel_arcs(&f, &d);
        assert_eq!(p, vec![ParallelArc { arc: 0, edge: 0, usable: true }]);
        let out = bypass_surgery(&f, &d, BypassSite::HalfDisk { arc: 0 }, AttachSide::Pos).unwrap();
        assert_eq!(out.face.slots, [2, 2, 0]);
        assert_eq!(tb::edge_tb(&out.face, 0), tb::edge_tb(&f, 0) + HalfInt::ONE);
        assert_eq!(bypass_surgery(&f, &d, BypassSite::HalfDisk { arc: 1 }, AttachSide::Pos), Err(DividingError::NotParallel(1)));
    }

    #[test]
    fn disk_guard() {
        let f = FaceModel::new(0, [2, 0, 0]);
        let d = DividingSet::new(&f, vec![(s(0, 0), s(0, 1))]).unwrap();
        assert_eq!(boundary_parallel_arcs(&f, &d), vec![ParallelArc { arc: 0, edge: 0, usable: false }]);
        assert_eq!(bypass_surgery(&f, &d, BypassSite::HalfDisk { arc: 0 }, AttachSide::Pos), Err(DividingError::DiskGuard(0)));
    }

    #[test]
    fn cross_edge_arcs_are_not_parallel() {
        let (f, d) = stack3();
        assert!(boundary_parallel_arcs(&f, &d).is_empty());
    }
}
