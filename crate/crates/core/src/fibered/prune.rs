//! Pruning: deleting the sectors through a boundary point and splitting an
//! ensemble of structures by their weights there.
//!
//! Removing a sector deletes every branch arc it meets. Surviving sectors keep
//! their topology; their sides along deleted arcs become boundary. A triple
//! point that loses an arc is blown up into one boundary point per surviving
//! arc end, joined by short boundary segments where a cycle turned the corner.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{weight_of, AdjustedStructure, Angle, AngleFunction, FiberedDomain, FiberedError, VerticalAnnulus};
use crate::branched::{ArcEnd, BranchArc, BranchedSurface, Endpoint, Sector, Side, Terminal, TriplePoint};

/// A point on the boundary of the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneSite {
    /// A point inside a free side of this sector.
    FreeSide(usize),
    /// The point where a branch arc meets the boundary.
    BoundaryPoint(usize),
}

/// Index maps from a surface to one of its restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub sectors: Vec<Option<usize>>,
    pub arcs: Vec<Option<usize>>,
}

enum Item {
    Arc(Side, Endpoint, Endpoint),
    Free,
}

/// The surface left after deleting `removed`.
pub fn remove_sectors(b: &BranchedSurface, removed: &BTreeSet<usize>) -> (BranchedSurface, Restriction) {
    let mut sector_map = alloc::vec![None; b.sectors.len()];
    let mut next = 0;
    for (s, slot) in sector_map.iter_mut().enumerate() {
        if !removed.contains(&s) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut arc_map = alloc::vec![None; b.branch_arcs.len()];
    let mut next = 0;
    for (i, a) in b.branch_arcs.iter().enumerate() {
        if [a.merged, a.upper, a.lower].iter().all(|s| !removed.contains(s)) {
            arc_map[i] = Some(next);
            next += 1;
        }
    }
    let alive = |e: &ArcEnd| arc_map.get(e.arc).copied().flatten().is_some();

    let mut triple_map = alloc::vec![None; b.triple_points.len()];
    let mut triples = Vec::new();
    for (t, tp) in b.triple_points.iter().enumerate() {
        if tp.strands.iter().flatten().all(alive) {
            triple_map[t] = Some(triples.len());
            triples.push(TriplePoint {
                strands: tp.strands.map(|pair| pair.map(|e| ArcEnd { arc: arc_map[e.arc].unwrap(), terminal: e.terminal })),
            });
        }
    }
    let mut boundary_points = 0;
    let mut new_end: BTreeMap<(usize, Terminal), Endpoint> = BTreeMap::new();
    for (i, a) in b.branch_arcs.iter().enumerate() {
        if arc_map[i].is_none() {
            continue;
        }
        for term in [Terminal::Start, Terminal::End] {
            let e = match a.endpoint(term) {
                Endpoint::Closed => Endpoint::Closed,
                Endpoint::Triple(t) if triple_map[t].is_some() => Endpoint::Triple(triple_map[t].unwrap()),
                Endpoint::Triple(_) | Endpoint::Boundary(_) => {
                    boundary_points += 1;
                    Endpoint::Boundary(boundary_points - 1)
                }
            };
            new_end.insert((i, term), e);
        }
    }

    let arcs = b
        .branch_arcs
        .iter()
        .enumerate()
        .filter(|(i, _)| arc_map[*i].is_some())
        .map(|(i, a)| BranchArc {
            merged: sector_map[a.merged].unwrap(),
            upper: sector_map[a.upper].unwrap(),
            lower: sector_map[a.lower].unwrap(),
            start: new_end[&(i, Terminal::Start)],
            end: new_end[&(i, Terminal::End)],
        })
        .collect();

    let mut sectors = Vec::new();
    for (s, sector) in b.sectors.iter().enumerate() {
        if sector_map[s].is_none() {
            continue;
        }
        let cycles = sector
            .boundary_cycles
            .iter()
            .map(|c| {
                let items: Vec<Item> = c
                    .iter()
                    .map(|side| match *side {
                        Side::Branch { arc, role, reversed, flipped } if arc_map[arc].is_some() => {
                            let (from, to) =
                                if reversed { (Terminal::End, Terminal::Start) } else { (Terminal::Start, Terminal::End) };
                            Item::Arc(
                                Side::Branch { arc: arc_map[arc].unwrap(), role, reversed, flipped },
                                new_end[&(arc, from)],
                                new_end[&(arc, to)],
                            )
                        }
                        _ => Item::Free,
                    })
                    .collect();
                rebuild_cycle(items)
            })
            .collect();
        sectors.push(Sector { euler_char: sector.euler_char, orientable: sector.orientable, boundary_cycles: cycles });
    }

    let out = BranchedSurface { name: b.name.clone(), sectors, branch_arcs: arcs, triple_points: triples, boundary_points };
    (out, Restriction { sectors: sector_map, arcs: arc_map })
}

fn rebuild_cycle(items: Vec<Item>) -> Vec<Side> {
    let Some(first) = items.iter().position(|i| matches!(i, Item::Arc(..))) else {
        return alloc::vec![Side::Free { from: Endpoint::Closed, to: Endpoint::Closed }];
    };
    let n = items.len();
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        let Item::Arc(side, _, end) = items[(first + k) % n] else { unreachable!("runs start at arcs") };
        out.push(side);
        k += 1;
        // Skip the free run, then join to the next arc.
        let mut j = k;
        while j < n && matches!(items[(first + j) % n], Item::Free) {
            j += 1;
        }
        let Item::Arc(_, start, _) = items[(first + j) % n] else { unreachable!("cycle returns to an arc") };
        if j > k || start != end {
            out.push(Side::Free { from: end, to: start });
        }
        k = j;
    }
    out
}

/// Structures sharing their weights on the removed sectors, restricted to the
/// remaining ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneClass {
    /// `(original sector, weight)` for each removed sector.
    pub removed_weights: Vec<(usize, i64)>,
    pub base: AdjustedStructure,
    pub structures: Vec<AdjustedStructure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PruneOutcome {
    pub domain: FiberedDomain,
    pub removed: Vec<usize>,
    pub restriction: Restriction,
    pub classes: Vec<PruneClass>,
}

fn restrict(a: &AdjustedStructure, r: &Restriction) -> AdjustedStructure {
    let values = a.angle.values().iter().zip(&r.sectors).filter(|(_, m)| m.is_some()).map(|(v, _)| *v).collect();
    AdjustedStructure::new(a.label.clone(), AngleFunction(values))
}

fn site_sectors(fd: &FiberedDomain, site: PruneSite) -> Result<BTreeSet<usize>, FiberedError> {
    let b = &fd.surface;
    match site {
        PruneSite::FreeSide(s) if s < b.sectors.len() && b.sectors[s].has_free_side() => Ok(BTreeSet::from([s])),
        PruneSite::BoundaryPoint(p) => b
            .branch_arcs
            .iter()
            .find(|a| a.start == Endpoint::Boundary(p) || a.end == Endpoint::Boundary(p))
            .map(|a| BTreeSet::from([a.merged, a.upper, a.lower]))
            .ok_or_else(|| FiberedError::BadSite(alloc::format!("boundary point {p}"))),
        PruneSite::FreeSide(s) => Err(FiberedError::BadSite(alloc::format!("sector {s}"))),
    }
}

/// Deletes the sectors through `site`, grouping the ensemble by its weights
/// relative to `base` on them. Every structure must stay below `cap` there.
pub fn prune(
    fd: &FiberedDomain,
    base: &AdjustedStructure,
    ensemble: &[AdjustedStructure],
    site: PruneSite,
    cap: Angle,
) -> Result<PruneOutcome, FiberedError> {
    let removed = site_sectors(fd, site)?;
    let mut groups: BTreeMap<Vec<i64>, Vec<&AdjustedStructure>> = BTreeMap::new();
    for x in ensemble {
        let w = weight_of(fd, x, base)?;
        for &s in &removed {
            let angle = x.angle.values()[s];
            if angle >= cap {
                return Err(FiberedError::CapExceeded { label: x.label.clone(), sector: s, angle, cap });
            }
        }
        groups.entry(removed.iter().map(|&s| w[s]).collect()).or_default().push(x);
    }
    let (surface, restriction) = remove_sectors(&fd.surface, &removed);
    let annuli = fd
        .annuli
        .iter()
        .map(|a| VerticalAnnulus {
            arcs: a.arcs.iter().filter_map(|&arc| restriction.arcs.get(arc).copied().flatten()).collect(),
            concave: a.concave,
        })
        .filter(|a| !a.arcs.is_empty())
        .collect();
    let domain = FiberedDomain { surface, annuli };
    let new_base = restrict(base, &restriction);
    let classes = groups
        .into_iter()
        .map(|(key, members)| {
            let removed_weights: Vec<(usize, i64)> = removed.iter().copied().zip(key).collect();
            let mut label = String::from(&base.label);
            for (s, w) in &removed_weights {
                label.push_str(&alloc::format!("[{s}={w}]"));
            }
            PruneClass {
                removed_weights,
                base: AdjustedStructure::new(label, new_base.angle.clone()),
                structures: members.into_iter().map(|x| restrict(x, &restriction)).collect(),
            }
        })
        .collect();
    Ok(PruneOutcome { domain, removed: removed.into_iter().collect(), restriction, classes })
}

/// Prunes at the lowest-index boundary sector until the quotient has no
/// boundary. `cap` defaults to one more than the largest angle in the ensemble.
/// Returns the final domain, the number of steps, and the classes, whose
/// removed sectors are numbered as in `fd`.
pub fn prune_to_closed(
    fd: &FiberedDomain,
    base: &AdjustedStructure,
    ensemble: &[AdjustedStructure],
    cap: Option<Angle>,
) -> Result<(FiberedDomain, usize, Vec<PruneClass>), FiberedError> {
    let cap = cap.unwrap_or_else(|| {
        ensemble.iter().filter_map(|x| x.angle.max()).max().unwrap_or_else(|| Angle::from_integer(0)) + Angle::from_integer(1)
    });
    let mut domain = fd.clone();
    let mut origin: Vec<usize> = (0..fd.sector_count()).collect();
    let mut classes = alloc::vec![PruneClass { removed_weights: Vec::new(), base: base.clone(), structures: ensemble.to_vec() }];
    let mut steps = 0;
    while let Some(&s) = domain.boundary_sectors().first() {
        let mut next_domain = None;
        let mut next_classes = Vec::new();
        for class in &classes {
            let out = prune(&domain, &class.base, &class.structures, PruneSite::FreeSide(s), cap)?;
            if out.classes.is_empty() {
                next_classes.push(PruneClass {
                    removed_weights: class.removed_weights.clone(),
                    base: restrict(&class.base, &out.restriction),
                    structures: Vec::new(),
                });
            }
            for c in out.classes {
                let mut removed_weights = class.removed_weights.clone();
                removed_weights.extend(c.removed_weights.iter().map(|&(k, w)| (origin[k], w)));
                next_classes.push(PruneClass { removed_weights, ..c });
            }
            next_domain.get_or_insert((out.domain, out.restriction));
        }
        let (d, r) = next_domain.expect("at least one class");
        origin = origin.iter().zip(&r.sectors).filter(|(_, m)| m.is_some()).map(|(o, _)| *o).collect();
        domain = d;
        classes = next_classes;
        steps += 1;
    }
    Ok((domain, steps, classes))
}
