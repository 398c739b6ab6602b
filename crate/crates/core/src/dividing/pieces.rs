//! Regions of the hexagon cut out by a dividing set.
//!
//! With `k` arcs there are `2k` boundary segments between consecutive slots
//! and `k + 1` regions. A region is traced by walking a boundary segment to its
//! end slot, following that slot's arc to its partner, and continuing with the
//! segment that starts there.

use alloc::vec::Vec;

use super::{DividingSet, FaceModel, Slot};
use crate::union_find::ParityUnionFind;

/// A boundary segment from one slot to the next, counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub from: Slot,
    pub to: Slot,
    /// Safety triangles passed on the way.
    pub corners: usize,
}

impl Segment {
    pub fn interior_edge(&self) -> Option<usize> {
        (self.corners == 0).then_some(self.from.edge)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceKind {
    /// A fibered quadrilateral: two arcs and two segments interior to distinct edges.
    Ordinary,
    Extraordinary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub id: usize,
    pub kind: PieceKind,
    pub arcs: Vec<usize>,
    pub segments: Vec<Segment>,
    pub touches_safety: bool,
}

/// A maximal run of ordinary pieces glued along shared arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stack {
    pub edges: (usize, usize),
    pub pieces: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceReport {
    pub pieces: Vec<Piece>,
    pub stacks: Vec<Stack>,
    /// Pieces in no stack.
    pub outside: Vec<usize>,
}

impl PieceReport {
    pub fn stacked_count(&self) -> usize {
        self.stacks.iter().map(|s| s.pieces.len()).sum()
    }
}

pub fn classify_pieces(face: &FaceModel, d: &DividingSet) -> PieceReport {
    let n = face.total_slots();
    if d.is_empty() {
        let whole = Piece { id: 0, kind: PieceKind::Extraordinary, arcs: Vec::new(), segments: Vec::new(), touches_safety: true };
        return PieceReport { pieces: alloc::vec![whole], stacks: Vec::new(), outside: alloc::vec![0] };
    }
    let chords = d.chords(face);
    let mut partner = alloc::vec![0usize; n];
    let mut arc_of = alloc::vec![0usize; n];
    for (i, &(p, q)) in chords.iter().enumerate() {
        partner[p] = q;
        partner[q] = p;
        arc_of[p] = i;
        arc_of[q] = i;
    }
    let segment = |j: usize| {
        let from = face.slot_at(j);
        let to = face.slot_at((j + 1) % n);
        let wrap = if j + 1 == n { 3 } else { 0 };
        Segment { from, to, corners: to.edge + wrap - from.edge }
    };

    let mut piece_of_segment = alloc::vec![usize::MAX; n];
    let mut pieces = Vec::new();
    for start in 0..n {
        if piece_of_segment[start] != usize::MAX {
            continue;
        }
        let id = pieces.len();
        let mut arcs = Vec::new();
        let mut segments = Vec::new();
        let mut j = start;
        loop {
            piece_of_segment[j] = id;
            segments.push(segment(j));
            let end = (j + 1) % n;
            arcs.push(arc_of[end]);
            j = partner[end];
            if j == start {
                break;
            }
        }
        let touches_safety = segments.iter().any(|s| s.corners > 0);
        let ordinary = segments.len() == 2
            && arcs[0] != arcs[1]
            && matches!((segments[0].interior_edge(), segments[1].interior_edge()), (Some(a), Some(b)) if a != b);
        pieces.push(Piece {
            id,
            kind: if ordinary { PieceKind::Ordinary } else { PieceKind::Extraordinary },
            arcs,
            segments,
            touches_safety,
        });
    }

    // Every arc borders exactly two pieces; glue ordinary neighbours.
    let mut sides: Vec<Vec<usize>> = alloc::vec![Vec::new(); chords.len()];
    for p in &pieces {
        for &a in &p.arcs {
            sides[a].push(p.id);
        }
    }
    let mut uf = ParityUnionFind::new(pieces.len());
    for s in &sides {
        if let [x, y] = s.as_slice() {
            if pieces[*x].kind == PieceKind::Ordinary && pieces[*y].kind == PieceKind::Ordinary {
                uf.union(*x, *y, false);
            }
        }
    }
    let (labels, _) = uf.labels();
    let mut stacks: Vec<Stack> = Vec::new();
    let mut stack_of_label: Vec<Option<usize>> = alloc::vec![None; pieces.len()];
    let mut outside = Vec::new();
    for p in &pieces {
        if p.kind != PieceKind::Ordinary {
            outside.push(p.id);
            continue;
        }
        let slot = &mut stack_of_label[labels[p.id]];
        match *slot {
            Some(s) => stacks[s].pieces.push(p.id),
            None => {
                let a = p.segments[0].from.edge;
                let b = p.segments[1].from.edge;
                *slot = Some(stacks.len());
                stacks.push(Stack { edges: (a.min(b), a.max(b)), pieces: alloc::vec![p.id] });
            }
        }
    }
    PieceReport { pieces, stacks, outside }
}

/// The arc closest to one end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extremal {
    pub edge: usize,
    /// The end of the edge at slot 0, as opposed to its last slot.
    pub at_start: bool,
    pub arc: usize,
}

/// One entry per edge end that carries a slot, so at most six.
pub fn extremal_components(face: &FaceModel, d: &DividingSet) -> Vec<Extremal> {
    let mut out = Vec::new();
    for edge in 0..3 {
        let n = face.slots[edge];
        if n == 0 {
            continue;
        }
        for (at_start, index) in [(true, 0), (false, n - 1)] {
            if let Some(arc) = d.arc_at(Slot::new(edge, index)) {
                out.push(Extremal { edge, at_start, arc });
            }
        }
    }
    out
}

/// Arcs whose endpoints are consecutive around the boundary: each cuts off a
/// region meeting the boundary in one segment with no other slot.
pub fn parallel_components(face: &FaceModel, d: &DividingSet) -> Vec<usize> {
    let n = face.total_slots();
    d.chords(face).iter().enumerate().filter(|(_, &(p, q))| q == p + 1 || (p == 0 && q + 1 == n)).map(|(i, _)| i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(e: usize, i: usize) -> Slot {
        Slot::new(e, i)
    }

    fn parallel(n: usize) -> (FaceModel, DividingSet) {
        let f = FaceModel::new(0, [n, n, 0]);
        let arcs = (0..n).map(|i| (s(0, i), s(1, n - 1 - i))).collect();
        (f.clone(), DividingSet::new(&f, arcs).unwrap())
    }

    #[test]
    fn empty_set_is_one_extraordinary_piece() {
        let f = FaceModel::new(0, [0, 0, 0]);
        let r = classify_pieces(&f, &DividingSet::empty());
        assert_eq!(r.pieces.len(), 1);
        assert_eq!(r.pieces[0].kind, PieceKind::Extraordinary);
        assert!(extremal_components(&f, &DividingSet::empty()).is_empty());
    }

    #[test]
    fn parallel_arcs_form_one_stack() {
        let (f, d) = parallel(4);
        let r = classify_pieces(&f, &d);
        assert_eq!(r.pieces.len(), 5);
        assert_eq!(r.stacks.len(), 1);
        assert_eq!(r.stacks[0].pieces.len(), 3);
        assert_eq!(r.stacks[0].edges, (0, 1));
        // the two end regions
        assert_eq!(r.outside.len(), 2);
        assert_eq!(r.stacked_count() + r.outside.len(), r.pieces.len());
    }

    #[test]
    fn outermost_arcs_are_extremal() {
        let (f, d) = parallel(3);
        let ext = extremal_components(&f, &d);
        let mut arcs: Vec<usize> = ext.iter().map(|e| e.arc).collect();
        arcs.sort();
        arcs.dedup();
        assert_eq!(arcs, vec![0, 2]);
        assert_eq!(ext.len(), 4);
    }

    #[test]
    fn three_stacks_around_a_centre() {
        // Two arcs around each corner.
        let f = FaceModel::new(0, [4, 4, 4]);
        let d = DividingSet::new(
            &f,
            vec![
                (s(0, 3), s(1, 0)),
                (s(0, 2), s(1, 1)),
                (s(1, 3), s(2, 0)),
                (s(1, 2), s(2, 1)),
                (s(2, 3), s(0, 0)),
                (s(2, 2), s(0, 1)),
            ],
        )
        .unwrap();
        let r = classify_pieces(&f, &d);
        assert_eq!(r.pieces.len(), 7);
        assert_eq!(r.stacks.len(), 3);
        // three corner triangles and the centre
        assert_eq!(r.outside.len(), 4);
        assert!(extremal_components(&f, &d).len() <= 6);
        assert_eq!(parallel_components(&f, &d).len(), 3);
    }
}
