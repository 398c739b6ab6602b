//! Branched surfaces as combinatorial objects: sectors bounded by cycles of
//! branch-arc sides and free boundary segments, branch arcs with a branching
//! direction, and triple points where two smooth branch curves cross.
//!
//! Each branch arc joins three sector sides. The `merged` side is where two
//! sheets have come together; the `upper` and `lower` sides are the two sheets
//! that merge. A weight vector is admissible when, for every arc,
//! `w[merged] = w[upper] + w[lower]`.

mod carried;
mod validate;

pub use carried::{carried_surface, klein_double, CarriedComponent, CarriedSurface, Classification, SheetId};
pub use validate::{validate, Location, Rule, ValidationReport, Violation};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::hilbert::ConeSystem;
use crate::union_find::ParityUnionFind;
use crate::weight::WeightVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Merged,
    Upper,
    Lower,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Merged, Role::Upper, Role::Lower];

    pub fn name(self) -> &'static str {
        match self {
            Role::Merged => "merged",
            Role::Upper => "upper",
            Role::Lower => "lower",
        }
    }
}

/// Where a branch arc or a free boundary segment ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Triple(usize),
    Boundary(usize),
    /// The arc or segment is a whole circle.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Terminal {
    Start,
    End,
}

/// One end of a branch arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcEnd {
    pub arc: usize,
    pub terminal: Terminal,
}

impl ArcEnd {
    pub fn start(arc: usize) -> Self {
        ArcEnd { arc, terminal: Terminal::Start }
    }

    pub fn end(arc: usize) -> Self {
        ArcEnd { arc, terminal: Terminal::End }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchArc {
    pub merged: usize,
    pub upper: usize,
    pub lower: usize,
    pub start: Endpoint,
    pub end: Endpoint,
}

impl BranchArc {
    pub fn sector(&self, role: Role) -> usize {
        match role {
            Role::Merged => self.merged,
            Role::Upper => self.upper,
            Role::Lower => self.lower,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.start == Endpoint::Closed
    }

    pub fn endpoint(&self, terminal: Terminal) -> Endpoint {
        match terminal {
            Terminal::Start => self.start,
            Terminal::End => self.end,
        }
    }
}

/// A crossing of two smooth branch curves. Each strand pairs the two arc ends
/// that continue each other smoothly through the point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePoint {
    pub strands: [[ArcEnd; 2]; 2],
}

/// One segment of a sector's boundary cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The sector meets `arc` in the given role. `reversed` means the cycle
    /// runs against the arc's direction. `flipped` means the sector's sheet
    /// order is opposite to the arc's stacking order along this side.
    Branch { arc: usize, role: Role, reversed: bool, flipped: bool },
    /// A segment of the boundary of the branched surface itself.
    Free { from: Endpoint, to: Endpoint },
}

impl Side {
    pub fn branch(arc: usize, role: Role) -> Self {
        Side::Branch { arc, role, reversed: false, flipped: false }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, Side::Free { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    /// Euler characteristic of the sector's closure as a compact surface.
    pub euler_char: i64,
    pub orientable: bool,
    pub boundary_cycles: Vec<Vec<Side>>,
}

impl Sector {
    pub fn closed(euler_char: i64, orientable: bool) -> Self {
        Sector { euler_char, orientable, boundary_cycles: Vec::new() }
    }

    pub fn has_free_side(&self) -> bool {
        self.boundary_cycles.iter().flatten().any(Side::is_free)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BranchedSurface {
    pub name: String,
    pub sectors: Vec<Sector>,
    pub branch_arcs: Vec<BranchArc>,
    pub triple_points: Vec<TriplePoint>,
    /// Number of points where a branch arc meets the boundary.
    pub boundary_points: usize,
}

/// Position of a side inside the sector cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideRef {
    pub sector: usize,
    pub cycle: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BranchedError {
    #[error("branched surface fails validation: {0}")]
    Invalid(ValidationReport),
    #[error("weight has length {len}, expected {expected}")]
    LengthMismatch { len: usize, expected: usize },
    #[error("zero weight carries no surface")]
    ZeroWeight,
    #[error("weight violates the switch equation of arc {arc}")]
    NotAdmissible { arc: usize },
    #[error("weight requires {sheets} sheets, above the limit of {limit}")]
    TooLarge { sheets: u64, limit: u64 },
    #[error("carried surface is not a single Klein bottle")]
    NotKleinBottle,
    #[error("integer overflow")]
    Overflow,
}

impl BranchedSurface {
    pub fn new(name: impl Into<String>) -> Self {
        BranchedSurface { name: name.into(), ..Default::default() }
    }

    /// A single closed sector and nothing else.
    pub fn closed_surface(name: impl Into<String>, euler_char: i64, orientable: bool) -> Self {
        BranchedSurface { name: name.into(), sectors: alloc::vec![Sector::closed(euler_char, orientable)], ..Default::default() }
    }

    pub fn sector_count(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_boundaryless(&self) -> bool {
        !self.sectors.iter().any(Sector::has_free_side)
    }

    /// Start and end of a side in the direction its cycle traverses it.
    pub fn side_endpoints(&self, side: &Side) -> Option<(Endpoint, Endpoint)> {
        match *side {
            Side::Branch { arc, reversed, .. } => {
                let a = self.branch_arcs.get(arc)?;
                Some(if reversed { (a.end, a.start) } else { (a.start, a.end) })
            }
            Side::Free { from, to } => Some((from, to)),
        }
    }

    /// Every branch side, keyed by arc and role. Unvalidated surfaces may list
    /// several sides per key.
    pub fn branch_sides(&self) -> BTreeMap<(usize, Role), Vec<SideRef>> {
        let mut map: BTreeMap<(usize, Role), Vec<SideRef>> = BTreeMap::new();
        for (sector, s) in self.sectors.iter().enumerate() {
            for (cycle, c) in s.boundary_cycles.iter().enumerate() {
                for (position, side) in c.iter().enumerate() {
                    if let Side::Branch { arc, role, .. } = *side {
                        map.entry((arc, role)).or_default().push(SideRef { sector, cycle, position });
                    }
                }
            }
        }
        map
    }

    pub fn side(&self, r: SideRef) -> &Side {
        &self.sectors[r.sector].boundary_cycles[r.cycle][r.position]
    }

    /// One relation per branch arc: `x[merged] − x[upper] − x[lower] = 0`,
    /// with coefficients accumulated when a sector meets an arc more than once.
    pub fn switch_system(&self) -> Result<ConeSystem, BranchedError> {
        let report = validate(self);
        if !report.is_pass() {
            return Err(BranchedError::Invalid(report));
        }
        ConeSystem::new(self.sectors.len().max(1), self.switch_rows())
            .map(|s| s.with_provenance(self.name.clone()))
            .map_err(|_| BranchedError::Overflow)
    }

    pub(crate) fn switch_rows(&self) -> Vec<Vec<i64>> {
        let n = self.sectors.len().max(1);
        self.branch_arcs
            .iter()
            .map(|a| {
                let mut row = alloc::vec![0i64; n];
                row[a.merged] += 1;
                row[a.upper] -= 1;
                row[a.lower] -= 1;
                row
            })
            .collect()
    }

    /// The first arc whose switch equation `w` violates, if any.
    pub fn violated_switch(&self, w: &WeightVector) -> Option<usize> {
        self.branch_arcs.iter().position(|a| {
            let lhs = w[a.merged] as i128;
            let rhs = w[a.upper] as i128 + w[a.lower] as i128;
            lhs != rhs
        })
    }

    pub fn is_admissible(&self, w: &WeightVector) -> bool {
        w.len() == self.sectors.len() && self.violated_switch(w).is_none()
    }

    /// Arcs grouped into smooth branch curves, joined through triple-point strands.
    pub fn branch_curves(&self) -> Vec<Vec<usize>> {
        let mut uf = ParityUnionFind::new(self.branch_arcs.len());
        for t in &self.triple_points {
            for [x, y] in t.strands {
                if x.arc < uf.len() && y.arc < uf.len() {
                    uf.union(x.arc, y.arc, false);
                }
            }
        }
        let (labels, count) = uf.labels();
        let mut curves = alloc::vec![Vec::new(); count];
        for (arc, l) in labels.into_iter().enumerate() {
            curves[l].push(arc);
        }
        curves
    }

    /// Sector adjacency across branch arcs, one `(merged, merging)` pair per arc side.
    pub fn sector_adjacency(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.branch_arcs.iter().enumerate() {
            out.push((a.merged, a.upper, i));
            out.push((a.merged, a.lower, i));
        }
        out
    }

    /// Disjoint union, with `other`'s indices shifted after `self`'s.
    pub fn disjoint_union(&self, other: &BranchedSurface) -> BranchedSurface {
        let ds = self.sectors.len();
        let da = self.branch_arcs.len();
        let dt = self.triple_points.len();
        let db = self.boundary_points;
        let shift_pt = |e: Endpoint| match e {
            Endpoint::Triple(t) => Endpoint::Triple(t + dt),
            Endpoint::Boundary(p) => Endpoint::Boundary(p + db),
            Endpoint::Closed => Endpoint::Closed,
        };
        let mut out = self.clone();
        out.name = alloc::format!("{} + {}", self.name, other.name);
        out.sectors.extend(other.sectors.iter().map(|s| {
            Sector {
                euler_char: s.euler_char,
                orientable: s.orientable,
                boundary_cycles: s
                    .boundary_cycles
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|side| match *side {
                                Side::Branch { arc, role, reversed, flipped } => {
                                    Side::Branch { arc: arc + da, role, reversed, flipped }
                                }
                                Side::Free { from, to } => Side::Free { from: shift_pt(from), to: shift_pt(to) },
                            })
                            .collect()
                    })
                    .collect(),
            }
        }));
        out.branch_arcs.extend(other.branch_arcs.iter().map(|a| BranchArc {
            merged: a.merged + ds,
            upper: a.upper + ds,
            lower: a.lower + ds,
            start: shift_pt(a.start),
            end: shift_pt(a.end),
        }));
        out.triple_points.extend(other.triple_points.iter().map(|t| TriplePoint {
            strands: t.strands.map(|pair| pair.map(|e| ArcEnd { arc: e.arc + da, terminal: e.terminal })),
        }));
        out.boundary_points += other.boundary_points;
        out
    }
}

/// True iff `w` has one strictly positive entry per sector.
pub fn fully_carried(b: &BranchedSurface, w: &WeightVector) -> bool {
    w.len() == b.sectors.len() && w.is_fully_carried()
}
