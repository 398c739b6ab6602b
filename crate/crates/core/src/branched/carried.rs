//! The surface carried by a weight vector.
//!
//! Over sector `i` we stack `w[i]` parallel sheets. Along a branch arc the
//! merged stack is the upper stack followed by the lower stack, in the arc's
//! own stacking order; a `flipped` side reads its sector's sheets in the
//! opposite order. The Euler characteristic comes from the explicit cell
//! structure: open sheets, one open edge per merged sheet over each arc, one
//! open edge per sheet over each free boundary segment, and the vertices obtained
//! by identifying edge ends at sector corners. Co-orientations are propagated
//! with a parity union-find; a parity conflict means the component is one-sided.

use alloc::string::String;
use alloc::vec::Vec;

use super::{validate, BranchedError, BranchedSurface, Endpoint, Role, Side, SideRef};
use crate::union_find::ParityUnionFind;
use crate::weight::WeightVector;

/// Upper bound on the total number of sheets a single construction may build.
pub const MAX_SHEETS: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SheetId {
    pub sector: usize,
    pub sheet: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Torus,
    KleinBottle,
    Other,
}

impl Classification {
    pub fn name(self) -> &'static str {
        match self {
            Classification::Torus => "torus",
            Classification::KleinBottle => "klein_bottle",
            Classification::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarriedComponent {
    pub id: usize,
    pub euler_char: i64,
    pub orientable: bool,
    /// No boundary.
    pub closed: bool,
    pub classification: Classification,
    /// Number of sheets of this component over each sector.
    pub weight: WeightVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarriedSurface {
    pub source: String,
    pub weight: WeightVector,
    pub components: Vec<CarriedComponent>,
    /// `F − E + V` of the whole weighted cell structure.
    pub weighted_euler_char: i64,
    /// Sheet pairs glued along branch arcs, with the arc index.
    pub gluings: Vec<(SheetId, SheetId, usize)>,
}

impl CarriedSurface {
    pub fn euler_char(&self) -> i64 {
        self.components.iter().map(|c| c.euler_char).sum()
    }
}

fn classify(closed: bool, euler_char: i64, orientable: bool) -> Classification {
    match (closed, euler_char, orientable) {
        (true, 0, true) => Classification::Torus,
        (true, 0, false) => Classification::KleinBottle,
        _ => Classification::Other,
    }
}

// Sheet `j` of a stack of size `n` read in the opposite order.
fn reorder(flipped: bool, j: usize, n: usize) -> usize {
    if flipped {
        n - 1 - j
    } else {
        j
    }
}

struct SideInfo {
    sector: usize,
    flipped: bool,
}

pub fn carried_surface(b: &BranchedSurface, w: &WeightVector) -> Result<CarriedSurface, BranchedError> {
    let report = validate(b);
    if !report.is_pass() {
        return Err(BranchedError::Invalid(report));
    }
    if w.len() != b.sectors.len() {
        return Err(BranchedError::LengthMismatch { len: w.len(), expected: b.sectors.len() });
    }
    if w.is_zero() {
        return Err(BranchedError::ZeroWeight);
    }
    if let Some(arc) = b.violated_switch(w) {
        return Err(BranchedError::NotAdmissible { arc });
    }
    let total = w.as_slice().iter().try_fold(0u64, |acc, &x| acc.checked_add(x)).ok_or(BranchedError::Overflow)?;
    if total > MAX_SHEETS {
        return Err(BranchedError::TooLarge { sheets: total, limit: MAX_SHEETS });
    }
    let weight: Vec<usize> = w.as_slice().iter().map(|&x| x as usize).collect();
    let mut offset = Vec::with_capacity(weight.len() + 1);
    let mut acc = 0usize;
    for &x in &weight {
        offset.push(acc);
        acc += x;
    }
    let node = |s: usize, k: usize| offset[s] + k;
    let total = acc;

    let sides = b.branch_sides();
    let info = |arc: usize, role: Role| -> SideInfo {
        let r: SideRef = sides[&(arc, role)][0];
        match *b.side(r) {
            Side::Branch { flipped, .. } => SideInfo { sector: r.sector, flipped },
            Side::Free { .. } => unreachable!("branch side map only holds branch sides"),
        }
    };

    // Sheets and co-orientation.
    let mut sheets = ParityUnionFind::new(total);
    for (i, s) in b.sectors.iter().enumerate() {
        if !s.orientable {
            let n = weight[i];
            for k in 0..n.div_ceil(2) {
                sheets.union(node(i, k), node(i, n - 1 - k), true);
            }
        }
    }
    let mut gluings = Vec::new();
    for (a, arc) in b.branch_arcs.iter().enumerate() {
        let m = info(a, Role::Merged);
        let u = info(a, Role::Upper);
        let l = info(a, Role::Lower);
        let (wm, wu, wl) = (weight[arc.merged], weight[arc.upper], weight[arc.lower]);
        for c in 0..wm {
            let ms = reorder(m.flipped, c, wm);
            let (other, flip) = if c < wu {
                (SheetId { sector: u.sector, sheet: reorder(u.flipped, c, wu) }, u.flipped)
            } else {
                (SheetId { sector: l.sector, sheet: reorder(l.flipped, c - wu, wl) }, l.flipped)
            };
            sheets.union(node(m.sector, ms), node(other.sector, other.sheet), m.flipped ^ flip);
            gluings.push((SheetId { sector: m.sector, sheet: ms }, other, a));
        }
    }
    let (sheet_label, ncomp) = sheets.labels();

    // One-cells: edges over non-closed arcs (indexed by merged-stack position),
    // then free segments (indexed by sheet).
    let mut cell_comp: Vec<usize> = Vec::new();
    let mut arc_base = alloc::vec![usize::MAX; b.branch_arcs.len()];
    for (a, arc) in b.branch_arcs.iter().enumerate() {
        if arc.is_closed() {
            continue;
        }
        let m = info(a, Role::Merged);
        let wm = weight[arc.merged];
        arc_base[a] = cell_comp.len();
        for c in 0..wm {
            cell_comp.push(sheet_label[node(m.sector, reorder(m.flipped, c, wm))]);
        }
    }
    let mut free_base: alloc::collections::BTreeMap<SideRef, usize> = alloc::collections::BTreeMap::new();
    for (si, s) in b.sectors.iter().enumerate() {
        for (ci, cycle) in s.boundary_cycles.iter().enumerate() {
            for (k, side) in cycle.iter().enumerate() {
                if let Side::Free { from, .. } = side {
                    if *from == Endpoint::Closed {
                        continue;
                    }
                    free_base.insert(SideRef { sector: si, cycle: ci, position: k }, cell_comp.len());
                    for j in 0..weight[si] {
                        cell_comp.push(sheet_label[node(si, j)]);
                    }
                }
            }
        }
    }

    // Lift of a side on sheet `j` of its sector: (cell, whether traversal runs backwards).
    let lift = |r: SideRef, j: usize| -> (usize, bool) {
        match *b.side(r) {
            Side::Branch { arc, role, reversed, flipped } => {
                let a = &b.branch_arcs[arc];
                let (wu, ws) = (weight[a.upper], weight[r.sector]);
                let c = match role {
                    Role::Merged | Role::Upper => reorder(flipped, j, ws),
                    Role::Lower => wu + reorder(flipped, j, ws),
                };
                (arc_base[arc] + c, reversed)
            }
            Side::Free { .. } => (free_base[&r] + j, false),
        }
    };
    let start_slot = |(cell, back): (usize, bool)| 2 * cell + usize::from(back);
    let end_slot = |(cell, back): (usize, bool)| 2 * cell + usize::from(!back);

    let mut corners = ParityUnionFind::new(2 * cell_comp.len());
    for (si, s) in b.sectors.iter().enumerate() {
        for (ci, cycle) in s.boundary_cycles.iter().enumerate() {
            if cycle.len() == 1 && b.side_endpoints(&cycle[0]).is_some_and(|(e, _)| e == Endpoint::Closed) {
                continue;
            }
            for k in 0..cycle.len() {
                let here = SideRef { sector: si, cycle: ci, position: k };
                let next = SideRef { sector: si, cycle: ci, position: (k + 1) % cycle.len() };
                for j in 0..weight[si] {
                    corners.union(end_slot(lift(here, j)), start_slot(lift(next, j)), false);
                }
            }
        }
    }
    let (vertex_label, nvert) = corners.labels();

    let mut faces = alloc::vec![0i64; ncomp];
    let mut edges = alloc::vec![0i64; ncomp];
    let mut verts = alloc::vec![0i64; ncomp];
    let mut orientable = alloc::vec![true; ncomp];
    let mut closed = alloc::vec![true; ncomp];
    let mut comp_weight = alloc::vec![alloc::vec![0u64; b.sectors.len()]; ncomp];
    for (i, s) in b.sectors.iter().enumerate() {
        let has_free = s.has_free_side();
        for k in 0..weight[i] {
            let c = sheet_label[node(i, k)];
            faces[c] += s.euler_char;
            comp_weight[c][i] += 1;
            if has_free {
                closed[c] = false;
            }
            if sheets.has_conflict(node(i, k)) {
                orientable[c] = false;
            }
        }
    }
    for &c in &cell_comp {
        edges[c] += 1;
    }
    let mut vertex_seen = alloc::vec![false; nvert];
    for (slot, &v) in vertex_label.iter().enumerate() {
        if !vertex_seen[v] {
            vertex_seen[v] = true;
            verts[cell_comp[slot / 2]] += 1;
        }
    }

    let weighted_euler_char =
        b.sectors.iter().zip(&weight).map(|(s, &n)| s.euler_char * n as i64).sum::<i64>() - cell_comp.len() as i64 + nvert as i64;

    let components = (0..ncomp)
        .map(|c| {
            let euler_char = faces[c] - edges[c] + verts[c];
            CarriedComponent {
                id: c,
                euler_char,
                orientable: orientable[c],
                closed: closed[c],
                classification: classify(closed[c], euler_char, orientable[c]),
                weight: WeightVector::new(core::mem::take(&mut comp_weight[c])),
            }
        })
        .collect();

    Ok(CarriedSurface { source: b.name.clone(), weight: w.clone(), components, weighted_euler_char, gluings })
}

/// Doubles the weight of a Klein bottle: the boundary of its tubular
/// neighbourhood is a torus carried with weight `2u`.
pub fn klein_double(b: &BranchedSurface, u: &WeightVector) -> Result<WeightVector, BranchedError> {
    let s = carried_surface(b, u)?;
    match s.components.as_slice() {
        [c] if c.classification == Classification::KleinBottle => u.checked_scale(2).ok_or(BranchedError::Overflow),
        _ => Err(BranchedError::NotKleinBottle),
    }
}
