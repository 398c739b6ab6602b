//! Holonomy of circuits around the vertices of a tetrahedron.
//!
//! A circuit is a cyclic list of steps. Step `k` travels inside `face` to
//! `edge` and crosses into the face of step `k + 1`. Each crossing carries an
//! order-preserving shift between endpoint indices of the singular lines on
//! either side; the holonomy is the total shift.

use alloc::vec::Vec;

use super::{edge_index, face_has_edge, face_vertices};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub face: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftMatching {
    pub edge: usize,
    pub from_face: usize,
    pub to_face: usize,
    pub offset: i64,
    /// Inclusive range of indices the shift is defined on.
    pub domain: (i64, i64),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HolonomyData {
    pub matchings: Vec<ShiftMatching>,
}

impl HolonomyData {
    pub fn find(&self, edge: usize, from_face: usize, to_face: usize) -> Option<&ShiftMatching> {
        self.matchings.iter().find(|m| m.edge == edge && m.from_face == from_face && m.to_face == to_face)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HolonomyError {
    #[error("empty circuit")]
    Empty,
    #[error("circuit does not close: step {step} crosses edge {edge} which is not shared by faces {face} and {next}")]
    NotClosing { step: usize, edge: usize, face: usize, next: usize },
    #[error("incomplete holonomy data: no matching on edge {edge} from face {from_face} to face {to_face}")]
    Incomplete { edge: usize, from_face: usize, to_face: usize },
    #[error("step {step} leaves the domain of its matching")]
    OutOfRange { step: usize },
    #[error("malformed corner stack {stack}")]
    BadCorner { stack: usize },
}

/// Total shift around `circuit`, requiring some index to survive every step.
pub fn holonomy(h: &HolonomyData, circuit: &[Step]) -> Result<i64, HolonomyError> {
    if circuit.is_empty() {
        return Err(HolonomyError::Empty);
    }
    let n = circuit.len();
    let mut range = (i64::MIN, i64::MAX);
    let mut total = 0i64;
    for (k, s) in circuit.iter().enumerate() {
        let next = circuit[(k + 1) % n].face;
        if s.face >= 4 || next >= 4 || s.edge >= 6 || !face_has_edge(s.face, s.edge) || !face_has_edge(next, s.edge) {
            return Err(HolonomyError::NotClosing { step: k, edge: s.edge, face: s.face, next });
        }
        let m =
            h.find(s.edge, s.face, next).ok_or(HolonomyError::Incomplete { edge: s.edge, from_face: s.face, to_face: next })?;
        let lo = range.0.max(m.domain.0);
        let hi = range.1.min(m.domain.1);
        if lo > hi {
            return Err(HolonomyError::OutOfRange { step: k });
        }
        range = (lo.saturating_add(m.offset), hi.saturating_add(m.offset));
        total += m.offset;
    }
    Ok(total)
}

/// The circuit around each vertex `v`, through the three faces containing it.
/// With `a < b < c` the other vertices, it runs from the face opposite `a`
/// across `vc`, through the face opposite `b` across `va`, and through the face
/// opposite `c` across `vb`.
pub fn corner_circuits() -> [Vec<Step>; 4] {
    core::array::from_fn(|v| {
        let others: Vec<usize> = (0..4).filter(|&u| u != v).collect();
        let (a, b, c) = (others[0], others[1], others[2]);
        alloc::vec![
            Step { face: a, edge: edge_index(v, c) },
            Step { face: b, edge: edge_index(v, a) },
            Step { face: c, edge: edge_index(v, b) },
        ]
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircuitOutcome {
    /// Holonomy −1.
    Pass,
    /// Holonomy 0 forces an overtwisted disk.
    Bennequin,
    /// Any other value: the triangulation was not minimal.
    NonMinimal(i64),
    /// Two consecutive steps in one face; such circuits reverse their own
    /// holonomy and are not evaluated.
    SameFace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitReport {
    pub circuit: Vec<Step>,
    pub holonomy: Option<i64>,
    pub outcome: CircuitOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyReport {
    pub circuits: Vec<CircuitReport>,
}

impl HolonomyReport {
    pub fn is_pass(&self) -> bool {
        self.circuits.iter().all(|c| matches!(c.outcome, CircuitOutcome::Pass | CircuitOutcome::SameFace))
    }
}

pub fn validate_holonomy(h: &HolonomyData, circuits: &[Vec<Step>]) -> Result<HolonomyReport, HolonomyError> {
    let mut out = Vec::with_capacity(circuits.len());
    for c in circuits {
        let n = c.len();
        if (0..n).any(|k| n > 1 && c[k].face == c[(k + 1) % n].face) {
            out.push(CircuitReport { circuit: c.clone(), holonomy: None, outcome: CircuitOutcome::SameFace });
            continue;
        }
        let value = holonomy(h, c)?;
        let outcome = match value {
            -1 => CircuitOutcome::Pass,
            0 => CircuitOutcome::Bennequin,
            v => CircuitOutcome::NonMinimal(v),
        };
        out.push(CircuitReport { circuit: c.clone(), holonomy: Some(value), outcome });
    }
    Ok(HolonomyReport { circuits: out })
}

/// Nested singular curves in one face around a vertex. Positions count along
/// an edge away from the vertex; on every edge the departing stack uses even
/// positions and the arriving stack odd ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerStack {
    /// Position of the innermost curve on the edge it leaves from.
    pub departure: i64,
    /// Position of the innermost curve on the edge it arrives at.
    pub arrival: i64,
    pub count: usize,
}

/// Three stacks around vertex `vertex`, stack `k` lying in the face of step
/// `k` of the vertex's corner circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerModel {
    pub vertex: usize,
    pub stacks: [CornerStack; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CornerTransport {
    pub c3: usize,
    pub c2: usize,
    pub c1: usize,
    /// Position of `c3` on the first edge.
    pub start: i64,
    /// Position where `c1` comes back to that edge.
    pub end: i64,
}

impl CornerTransport {
    pub fn holonomy(&self) -> i64 {
        (self.end - self.start - 1).div_euclid(2)
    }

    pub fn adjacent(&self) -> bool {
        (self.end - self.start).abs() == 1
    }
}

impl CornerModel {
    pub fn new(vertex: usize, stacks: [CornerStack; 3]) -> Result<Self, HolonomyError> {
        for (stack, s) in stacks.iter().enumerate() {
            if vertex >= 4
                || s.count == 0
                || s.departure < 0
                || s.arrival < 0
                || s.departure % 2 != 0
                || s.arrival.rem_euclid(2) != 1
            {
                return Err(HolonomyError::BadCorner { stack });
            }
        }
        Ok(CornerModel { vertex, stacks })
    }

    /// Starting from curve `c3` of the first stack, take at each edge the curve
    /// of the next stack whose endpoint comes just after, toward the vertex.
    pub fn transport(&self, c3: usize) -> Result<CornerTransport, HolonomyError> {
        let [s0, s1, s2] = self.stacks;
        let pick = |s: CornerStack, position: i64, step: usize| -> Result<usize, HolonomyError> {
            let j = (position - s.departure).div_euclid(2);
            if position < s.departure || j >= s.count as i64 {
                return Err(HolonomyError::OutOfRange { step });
            }
            Ok(j as usize)
        };
        if c3 >= s0.count {
            return Err(HolonomyError::OutOfRange { step: 0 });
        }
        let start = s0.departure + 2 * c3 as i64;
        let c2 = pick(s1, s0.arrival + 2 * c3 as i64 - 1, 0)?;
        let c1 = pick(s2, s1.arrival + 2 * c2 as i64 - 1, 1)?;
        let end = s2.arrival + 2 * c1 as i64;
        Ok(CornerTransport { c3, c2, c1, start, end })
    }

    /// The crossing data seen by [`holonomy`], indexed by half the departure
    /// position.
    pub fn to_holonomy(&self) -> (HolonomyData, Vec<Step>) {
        let circuit = corner_circuits()[self.vertex].clone();
        let matchings = (0..3)
            .map(|k| {
                let s = self.stacks[k];
                let lo = s.departure / 2;
                ShiftMatching {
                    edge: circuit[k].edge,
                    from_face: circuit[k].face,
                    to_face: circuit[(k + 1) % 3].face,
                    offset: (s.arrival - s.departure - 1) / 2,
                    domain: (lo, lo + s.count as i64 - 1),
                }
            })
            .collect();
        (HolonomyData { matchings }, circuit)
    }

    pub fn faces(&self) -> [usize; 3] {
        let v = face_vertices(self.vertex);
        [v[0], v[1], v[2]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn data(circuit: &[Step], offsets: &[i64]) -> HolonomyData {
        let n = circuit.len();
        HolonomyData {
            matchings: (0..n)
                .map(|k| ShiftMatching {
                    edge: circuit[k].edge,
                    from_face: circuit[k].face,
                    to_face: circuit[(k + 1) % n].face,
                    offset: offsets[k],
                    domain: (-100, 100),
                })
                .collect(),
        }
    }

    #[test]
    fn corner_circuits_close() {
        for (v, c) in corner_circuits().iter().enumerate() {
            assert_eq!(c.len(), 3);
            assert!(c.iter().all(|s| s.face != v));
            let h = data(c, &[0, 0, -1]);
            assert_eq!(holonomy(&h, c), Ok(-1));
        }
    }

    #[test]
    fn outcomes() {
        let c = corner_circuits()[0].clone();
        let check =
            |offsets: &[i64]| validate_holonomy(&data(&c, offsets), std::slice::from_ref(&c)).unwrap().circuits[0].outcome;
        assert_eq!(check(&[1, -1, -1]), CircuitOutcome::Pass);
        assert_eq!(check(&[1, -1, 0]), CircuitOutcome::Bennequin);
        assert_eq!(check(&[2, 0, 0]), CircuitOutcome::NonMinimal(2));
    }

    #[test]
    fn missing_and_broken_data() {
        let c = corner_circuits()[1].clone();
        let mut h = data(&c, &[0, 0, -1]);
        h.matchings.pop();
        assert!(matches!(validate_holonomy(&h, std::slice::from_ref(&c)), Err(HolonomyError::Incomplete { .. })));
        let broken = vec![Step { face: 0, edge: 0 }, Step { face: 2, edge: 3 }];
        assert!(matches!(holonomy(&h, &broken), Err(HolonomyError::NotClosing { step: 0, .. })));
        let mut narrow = data(&c, &[5, 0, -6]);
        narrow.matchings[1].domain = (0, 2);
        narrow.matchings[0].domain = (0, 2);
        assert_eq!(holonomy(&narrow, &c), Err(HolonomyError::OutOfRange { step: 1 }));
    }

    #[test]
    fn same_face_circuits_are_excluded() {
        let c = vec![Step { face: 3, edge: 0 }, Step { face: 3, edge: 1 }];
        let r = validate_holonomy(&HolonomyData::default(), &[c]).unwrap();
        assert_eq!(r.circuits[0].outcome, CircuitOutcome::SameFace);
        assert!(r.is_pass());
    }

    #[test]
    fn corner_model_adjacency() {
        let s = |departure, arrival, count| CornerStack { departure, arrival, count };
        let m = CornerModel::new(3, [s(0, 1, 3), s(0, 1, 3), s(0, 1, 3)]).unwrap();
        let t = m.transport(2).unwrap();
        assert_eq!((t.c3, t.c2, t.c1), (2, 2, 2));
        assert_eq!(t.holonomy(), 0);
        assert!(t.adjacent());
        let (h, c) = m.to_holonomy();
        assert_eq!(holonomy(&h, &c), Ok(t.holonomy()));
        let m = CornerModel::new(0, [s(0, 1, 2), s(0, 1, 2), s(2, 1, 2)]).unwrap();
        let t = m.transport(1).unwrap();
        assert_eq!(t.holonomy(), -1);
        assert_eq!(t.end, t.start - 1);
        assert!(t.adjacent());
        assert!(CornerModel::new(0, [s(1, 1, 1), s(0, 1, 1), s(0, 1, 1)]).is_err());
    }
}
