use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{ArcEnd, BranchedSurface, Endpoint, Role, Side, Terminal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    DanglingSector,
    DanglingArc,
    DanglingTriplePoint,
    DanglingBoundaryPoint,
    EmptyCycle,
    RoleMismatch,
    SideMultiplicity,
    CycleContinuity,
    ClosedArc,
    ClosedSide,
    FreeSideEndpoint,
    TripleValence,
    TripleStrands,
    BoundaryValence,
    SectorTopology,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::DanglingSector => "dangling sector reference",
            Rule::DanglingArc => "dangling arc reference",
            Rule::DanglingTriplePoint => "dangling triple point reference",
            Rule::DanglingBoundaryPoint => "dangling boundary point reference",
            Rule::EmptyCycle => "empty boundary cycle",
            Rule::RoleMismatch => "side role does not match arc",
            Rule::SideMultiplicity => "arc side multiplicity",
            Rule::CycleContinuity => "boundary cycle not continuous",
            Rule::ClosedArc => "closed arc with an endpoint",
            Rule::ClosedSide => "closed side shares its cycle",
            Rule::FreeSideEndpoint => "free side endpoint",
            Rule::TripleValence => "triple point valence",
            Rule::TripleStrands => "triple point strands",
            Rule::BoundaryValence => "boundary point valence",
            Rule::SectorTopology => "sector topology",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Location {
    Sector(usize),
    Side { sector: usize, cycle: usize, side: usize },
    Arc(usize),
    TriplePoint(usize),
    BoundaryPoint(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Location::Sector(s) => write!(f, "sector {s}"),
            Location::Side { sector, cycle, side } => write!(f, "sector {sector} cycle {cycle} side {side}"),
            Location::Arc(a) => write!(f, "arc {a}"),
            Location::TriplePoint(t) => write!(f, "triple point {t}"),
            Location::BoundaryPoint(p) => write!(f, "boundary point {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub location: Location,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.rule, self.location, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: Rule, location: Location, detail: String) {
        self.violations.push(Violation { rule, location, detail });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("pass");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every structural rule and collects all violations.
pub fn validate(b: &BranchedSurface) -> ValidationReport {
    let mut r = ValidationReport::default();
    let ns = b.sectors.len();
    let na = b.branch_arcs.len();
    let nt = b.triple_points.len();
    let nb = b.boundary_points;

    let endpoint_ok = |e: Endpoint| match e {
        Endpoint::Triple(t) => t < nt,
        Endpoint::Boundary(p) => p < nb,
        Endpoint::Closed => true,
    };
    let dangling_rule = |e: Endpoint| match e {
        Endpoint::Triple(_) => Rule::DanglingTriplePoint,
        _ => Rule::DanglingBoundaryPoint,
    };

    // Arcs.
    let mut arc_sane = alloc::vec![true; na];
    for (i, a) in b.branch_arcs.iter().enumerate() {
        for role in Role::ALL {
            let s = a.sector(role);
            if s >= ns {
                arc_sane[i] = false;
                r.push(Rule::DanglingSector, Location::Arc(i), format!("{} sector {s} does not exist", role.name()));
            }
        }
        for e in [a.start, a.end] {
            if !endpoint_ok(e) {
                arc_sane[i] = false;
                r.push(dangling_rule(e), Location::Arc(i), format!("endpoint {e:?} does not exist"));
            }
        }
        if (a.start == Endpoint::Closed) != (a.end == Endpoint::Closed) {
            r.push(Rule::ClosedArc, Location::Arc(i), String::from("only one endpoint is closed"));
        }
    }

    // Sides and cycles.
    let mut counts: BTreeMap<(usize, Role), usize> = BTreeMap::new();
    for (si, s) in b.sectors.iter().enumerate() {
        for (ci, cycle) in s.boundary_cycles.iter().enumerate() {
            if cycle.is_empty() {
                r.push(Rule::EmptyCycle, Location::Side { sector: si, cycle: ci, side: 0 }, String::from("cycle has no sides"));
                continue;
            }
            let mut ends: Vec<Option<(Endpoint, Endpoint)>> = Vec::with_capacity(cycle.len());
            for (k, side) in cycle.iter().enumerate() {
                let loc = Location::Side { sector: si, cycle: ci, side: k };
                match *side {
                    Side::Branch { arc, role, .. } => {
                        if arc >= na {
                            r.push(Rule::DanglingArc, loc, format!("arc {arc} does not exist"));
                            ends.push(None);
                            continue;
                        }
                        *counts.entry((arc, role)).or_default() += 1;
                        let expected = b.branch_arcs[arc].sector(role);
                        if expected != si {
                            r.push(
                                Rule::RoleMismatch,
                                loc,
                                format!("arc {arc} puts sector {expected} on its {} side", role.name()),
                            );
                        }
                        ends.push(if arc_sane[arc] { b.side_endpoints(side) } else { None });
                    }
                    Side::Free { from, to } => {
                        let mut ok = true;
                        for e in [from, to] {
                            if !endpoint_ok(e) {
                                ok = false;
                                r.push(dangling_rule(e), loc, format!("endpoint {e:?} does not exist"));
                            } else if matches!(e, Endpoint::Triple(_)) {
                                ok = false;
                                r.push(Rule::FreeSideEndpoint, loc, String::from("free side ends at a triple point"));
                            }
                        }
                        if (from == Endpoint::Closed) != (to == Endpoint::Closed) {
                            ok = false;
                            r.push(Rule::FreeSideEndpoint, loc, String::from("only one endpoint is closed"));
                        }
                        ends.push(if ok { Some((from, to)) } else { None });
                    }
                }
            }
            let closed = ends.iter().any(|e| matches!(e, Some((Endpoint::Closed, _))));
            if closed {
                if cycle.len() != 1 {
                    r.push(
                        Rule::ClosedSide,
                        Location::Side { sector: si, cycle: ci, side: 0 },
                        String::from("a closed side must be alone in its cycle"),
                    );
                }
                continue;
            }
            for k in 0..cycle.len() {
                let next = (k + 1) % cycle.len();
                if let (Some((_, e)), Some((s2, _))) = (ends[k], ends[next]) {
                    if e != s2 {
                        r.push(
                            Rule::CycleContinuity,
                            Location::Side { sector: si, cycle: ci, side: k },
                            format!("side ends at {e:?} but the next side starts at {s2:?}"),
                        );
                    }
                }
            }
        }
    }
    for (i, a) in b.branch_arcs.iter().enumerate() {
        if !arc_sane[i] {
            continue;
        }
        for role in Role::ALL {
            let c = counts.get(&(i, role)).copied().unwrap_or(0);
            if c != 1 {
                r.push(
                    Rule::SideMultiplicity,
                    Location::Arc(i),
                    format!("{} side appears {c} times in sector {}", role.name(), a.sector(role)),
                );
            }
        }
    }

    // Triple and boundary points.
    let mut at_triple: Vec<Vec<ArcEnd>> = alloc::vec![Vec::new(); nt];
    let mut at_boundary: Vec<usize> = alloc::vec![0; nb];
    for (i, a) in b.branch_arcs.iter().enumerate() {
        for terminal in [Terminal::Start, Terminal::End] {
            match a.endpoint(terminal) {
                Endpoint::Triple(t) if t < nt => at_triple[t].push(ArcEnd { arc: i, terminal }),
                Endpoint::Boundary(p) if p < nb => at_boundary[p] += 1,
                _ => {}
            }
        }
    }
    for (t, tp) in b.triple_points.iter().enumerate() {
        let seen = &mut at_triple[t];
        if seen.len() != 4 {
            r.push(Rule::TripleValence, Location::TriplePoint(t), format!("{} arc ends meet here, expected 4", seen.len()));
            continue;
        }
        let mut declared: Vec<ArcEnd> = tp.strands.iter().flatten().copied().collect();
        declared.sort();
        seen.sort();
        if declared != *seen {
            r.push(Rule::TripleStrands, Location::TriplePoint(t), String::from("strands do not pair the incident arc ends"));
        }
    }
    for (p, &c) in at_boundary.iter().enumerate() {
        if c != 1 {
            r.push(Rule::BoundaryValence, Location::BoundaryPoint(p), format!("{c} arc ends meet here, expected 1"));
        }
    }

    // Sector topology: χ = 2 − 2g − b (orientable) or 2 − g − b with g ≥ 1.
    for (si, s) in b.sectors.iter().enumerate() {
        let deficit = 2 - s.euler_char - s.boundary_cycles.len() as i64;
        let ok = if s.orientable { deficit >= 0 && deficit % 2 == 0 } else { deficit >= 1 };
        if !ok {
            r.push(
                Rule::SectorTopology,
                Location::Sector(si),
                format!(
                    "no {} surface has χ = {} and {} boundary circles",
                    if s.orientable { "orientable" } else { "non-orientable" },
                    s.euler_char,
                    s.boundary_cycles.len()
                ),
            );
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branched::{BranchArc, Sector};
    use crate::fixtures;

    #[test]
    fn closed_torus_passes() {
        assert!(validate(&BranchedSurface::closed_surface("t", 0, true)).is_pass());
    }

    #[test]
    fn fixtures_pass() {
        for b in [fixtures::fig1_local(), fixtures::fig1_torus(), fixtures::single_arc(), fixtures::self_merging_arc()] {
            let r = validate(&b);
            assert!(r.is_pass(), "{}: {}", b.name, r);
        }
    }

    #[test]
    fn dangling_sector_is_reported() {
        let mut b = fixtures::single_arc();
        b.branch_arcs[0].merged = 9;
        let r = validate(&b);
        assert!(r.has(Rule::DanglingSector));
        assert!(r.to_string().contains("dangling sector reference"));
    }

    #[test]
    fn missing_side_is_reported() {
        let mut b = fixtures::single_arc();
        b.sectors[0].boundary_cycles.clear();
        b.sectors[0].euler_char = 0;
        let r = validate(&b);
        assert!(r.has(Rule::SideMultiplicity));
    }

    #[test]
    fn impossible_topology_is_reported() {
        let b = BranchedSurface::closed_surface("x", 1, true);
        assert!(validate(&b).has(Rule::SectorTopology));
        let b = BranchedSurface::closed_surface("rp2", 1, false);
        assert!(validate(&b).is_pass());
        let b = BranchedSurface::closed_surface("s", 3, false);
        assert!(validate(&b).has(Rule::SectorTopology));
    }

    #[test]
    fn broken_triple_point_is_reported() {
        let mut b = fixtures::fig1_local();
        b.triple_points[0].strands[0][0] = ArcEnd::end(0);
        assert!(validate(&b).has(Rule::TripleStrands));
        let mut b = fixtures::fig1_local();
        b.branch_arcs[0].start = Endpoint::Boundary(0);
        assert!(validate(&b).has(Rule::TripleValence));
    }

    #[test]
    fn discontinuous_cycle_is_reported() {
        let mut b = fixtures::fig1_local();
        if let Side::Free { to, .. } = &mut b.sectors[0].boundary_cycles[0][1] {
            *to = Endpoint::Boundary(2);
        }
        assert!(validate(&b).has(Rule::CycleContinuity));
    }

    #[test]
    fn half_closed_arc_is_reported() {
        let mut b = BranchedSurface::new("bad");
        b.sectors.push(Sector::closed(0, true));
        b.branch_arcs.push(BranchArc { merged: 0, upper: 0, lower: 0, start: Endpoint::Closed, end: Endpoint::Boundary(0) });
        let r = validate(&b);
        assert!(r.has(Rule::ClosedArc));
        assert!(r.has(Rule::DanglingBoundaryPoint));
    }
}
