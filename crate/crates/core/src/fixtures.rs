//! Hand-built reference surfaces.
//!
//! The local model `fig1_local` is the quotient of three planes: `P₁` glued to
//! `P₀` over `x < 0` and `P₂` glued to `P₀` over `y < 0`. Its branch locus is
//! the two coordinate axes, crossing at a single triple point, cut into four
//! arcs running from the triple point out to the boundary square. `fig1_torus`
//! is the doubly periodic version on a torus, closed and with four triple
//! points.

use alloc::vec::Vec;

use crate::branched::{ArcEnd, BranchArc, BranchedSurface, Endpoint, Role, Sector, Side, TriplePoint};
use crate::weight::WeightVector;

/// Side description for [`build_sector`]: branch sides name an arc and a role,
/// free sides name their boundary points. Branch side direction is inferred.
#[derive(Debug, Clone, Copy)]
pub enum SideSpec {
    M(usize),
    Up(usize),
    Lo(usize),
    /// Like the above, with the sheet order reversed along the side.
    Flipped(usize, Role),
    Free(usize, usize),
    FreeCircle,
}

/// Appends a sector whose cycles are given in cyclic order. Panics if no
/// choice of directions makes a cycle continuous.
pub fn build_sector(b: &mut BranchedSurface, euler_char: i64, orientable: bool, cycles: &[&[SideSpec]]) -> usize {
    let cycles = cycles.iter().map(|c| orient_cycle(b, c)).collect();
    b.sectors.push(Sector { euler_char, orientable, boundary_cycles: cycles });
    b.sectors.len() - 1
}

fn raw_side(spec: SideSpec) -> Side {
    match spec {
        SideSpec::M(a) => Side::branch(a, Role::Merged),
        SideSpec::Up(a) => Side::branch(a, Role::Upper),
        SideSpec::Lo(a) => Side::branch(a, Role::Lower),
        SideSpec::Flipped(arc, role) => Side::Branch { arc, role, reversed: false, flipped: true },
        SideSpec::Free(p, q) => Side::Free { from: Endpoint::Boundary(p), to: Endpoint::Boundary(q) },
        SideSpec::FreeCircle => Side::Free { from: Endpoint::Closed, to: Endpoint::Closed },
    }
}

fn orient_cycle(b: &BranchedSurface, specs: &[SideSpec]) -> Vec<Side> {
    let raw: Vec<Side> = specs.iter().map(|&s| raw_side(s)).collect();
    for first in [false, true] {
        let mut out = raw.clone();
        if let Side::Branch { reversed, .. } = &mut out[0] {
            *reversed = first;
        } else if first {
            break;
        }
        let (_, mut at) = b.side_endpoints(&out[0]).expect("arc exists");
        let mut ok = true;
        for side in out.iter_mut().skip(1) {
            let (s, e) = b.side_endpoints(side).expect("arc exists");
            if s == at {
                at = e;
            } else if let Side::Branch { reversed, .. } = side {
                if e != at {
                    ok = false;
                    break;
                }
                *reversed = true;
                at = s;
            } else {
                ok = false;
                break;
            }
        }
        let (start, _) = b.side_endpoints(&out[0]).expect("arc exists");
        if ok && at == start {
            return out;
        }
    }
    panic!("cycle {specs:?} cannot be oriented continuously");
}

fn arc(b: &mut BranchedSurface, merged: usize, upper: usize, lower: usize, start: Endpoint, end: Endpoint) -> usize {
    b.branch_arcs.push(BranchArc { merged, upper, lower, start, end });
    b.branch_arcs.len() - 1
}

/// One arc between two boundary points; sectors 0 and 1 merge into sector 2.
pub fn single_arc() -> BranchedSurface {
    use SideSpec::*;
    let mut b = BranchedSurface::new("single arc");
    b.boundary_points = 2;
    arc(&mut b, 2, 0, 1, Endpoint::Boundary(0), Endpoint::Boundary(1));
    build_sector(&mut b, 1, true, &[&[Up(0), Free(1, 0)]]);
    build_sector(&mut b, 1, true, &[&[Lo(0), Free(1, 0)]]);
    build_sector(&mut b, 1, true, &[&[M(0), Free(1, 0)]]);
    b
}

/// An annulus (sector 0) whose two boundary circles merge into a disk (sector 1)
/// along one closed arc. Weight `(n, 2n)` carries `n` spheres.
pub fn self_merging_arc() -> BranchedSurface {
    use SideSpec::*;
    let mut b = BranchedSurface::new("self merging arc");
    arc(&mut b, 1, 0, 0, Endpoint::Closed, Endpoint::Closed);
    build_sector(&mut b, 0, true, &[&[Up(0)], &[Lo(0)]]);
    build_sector(&mut b, 1, true, &[&[M(0)]]);
    b
}

const N: usize = 0;
const S: usize = 1;
const E: usize = 2;
const W: usize = 3;

/// Sectors: 0 = `P₀` over the first quadrant, 1 = `P₀ ~ P₁` over the second,
/// 2 = `P₀ ~ P₂` over the fourth, 3 = all three planes over the third,
/// 4 = `P₁` over `x > 0`, 5 = `P₂` over `y > 0`.
pub fn fig1_local() -> BranchedSurface {
    use SideSpec::*;
    let mut b = BranchedSurface::new("three planes");
    b.boundary_points = 4;
    let t = Endpoint::Triple(0);
    let a0 = arc(&mut b, 1, 4, 0, t, Endpoint::Boundary(N));
    let a1 = arc(&mut b, 3, 4, 2, t, Endpoint::Boundary(S));
    let a2 = arc(&mut b, 2, 0, 5, t, Endpoint::Boundary(E));
    let a3 = arc(&mut b, 3, 1, 5, t, Endpoint::Boundary(W));
    b.triple_points
        .push(TriplePoint { strands: [[ArcEnd::start(a0), ArcEnd::start(a1)], [ArcEnd::start(a2), ArcEnd::start(a3)]] });
    build_sector(&mut b, 1, true, &[&[Up(a2), Free(E, N), Lo(a0)]]);
    build_sector(&mut b, 1, true, &[&[M(a0), Free(N, W), Up(a3)]]);
    build_sector(&mut b, 1, true, &[&[M(a2), Free(E, S), Lo(a1)]]);
    build_sector(&mut b, 1, true, &[&[M(a1), Free(S, W), M(a3)]]);
    build_sector(&mut b, 1, true, &[&[Up(a0), Up(a1), Free(S, N)]]);
    build_sector(&mut b, 1, true, &[&[Lo(a2), Free(E, W), Lo(a3)]]);
    b
}

/// The three planes, each one a connected disk carried by `fig1_local`.
pub fn fig1_generators() -> Vec<WeightVector> {
    [[1, 1, 1, 1, 0, 0], [0, 1, 0, 1, 1, 0], [0, 0, 1, 1, 0, 1]].iter().map(|w| WeightVector::new(w.to_vec())).collect()
}

/// Periodic version of [`fig1_local`] on the torus `[0,2)²`. Sectors 0..4 are the
/// squares `(L,B), (R,B), (L,T), (R,T)` of `P₀`; sector 4 is the annulus of `P₁`
/// over `x ∈ L`, sector 5 the annulus of `P₂` over `y ∈ B`.
pub fn fig1_torus() -> BranchedSurface {
    use SideSpec::*;
    let mut b = BranchedSurface::new("three tori");
    // t(x, y) for x, y ∈ {0, 1}
    let t = |x: usize, y: usize| Endpoint::Triple(x + 2 * y);
    let mut alpha_b = [0; 2];
    let mut alpha_t = [0; 2];
    let mut beta_l = [0; 2];
    let mut beta_r = [0; 2];
    for x in 0..2 {
        alpha_b[x] = arc(&mut b, 1, 4, 0, t(x, 0), t(x, 1));
        alpha_t[x] = arc(&mut b, 3, 4, 2, t(x, 1), t(x, 0));
    }
    for y in 0..2 {
        beta_l[y] = arc(&mut b, 2, 0, 5, t(0, y), t(1, y));
        beta_r[y] = arc(&mut b, 3, 1, 5, t(1, y), t(0, y));
    }
    for y in 0..2 {
        for x in 0..2 {
            let vertical = if y == 0 {
                [ArcEnd::start(alpha_b[x]), ArcEnd::end(alpha_t[x])]
            } else {
                [ArcEnd::end(alpha_b[x]), ArcEnd::start(alpha_t[x])]
            };
            let horizontal = if x == 0 {
                [ArcEnd::start(beta_l[y]), ArcEnd::end(beta_r[y])]
            } else {
                [ArcEnd::end(beta_l[y]), ArcEnd::start(beta_r[y])]
            };
            b.triple_points.push(TriplePoint { strands: [vertical, horizontal] });
        }
    }
    build_sector(&mut b, 1, true, &[&[Up(beta_l[0]), Lo(alpha_b[1]), Up(beta_l[1]), Lo(alpha_b[0])]]);
    build_sector(&mut b, 1, true, &[&[Up(beta_r[0]), M(alpha_b[0]), Up(beta_r[1]), M(alpha_b[1])]]);
    build_sector(&mut b, 1, true, &[&[M(beta_l[1]), Lo(alpha_t[1]), M(beta_l[0]), Lo(alpha_t[0])]]);
    build_sector(&mut b, 1, true, &[&[M(beta_r[1]), M(alpha_t[0]), M(beta_r[0]), M(alpha_t[1])]]);
    build_sector(&mut b, 0, true, &[&[Up(alpha_b[0]), Up(alpha_t[0])], &[Up(alpha_b[1]), Up(alpha_t[1])]]);
    build_sector(&mut b, 0, true, &[&[Lo(beta_l[0]), Lo(beta_r[0])], &[Lo(beta_l[1]), Lo(beta_r[1])]]);
    b
}

/// The three tori `P₀, P₁, P₂` carried by [`fig1_torus`].
pub fn fig1_torus_generators() -> Vec<WeightVector> {
    fig1_generators()
}

/// A single closed non-orientable sector with `χ = 0`.
pub fn klein_bottle() -> BranchedSurface {
    BranchedSurface::closed_surface("klein bottle", 0, false)
}

/// A single closed orientable sector of genus `g`.
pub fn closed_genus(g: i64) -> BranchedSurface {
    BranchedSurface::closed_surface(alloc::format!("genus {g}"), 2 - 2 * g, true)
}

/// [`self_merging_arc`] together with a disjoint disk whose boundary is free.
/// Pruning the disk leaves a closed two-sector surface.
pub fn sphere_and_disk() -> BranchedSurface {
    use SideSpec::*;
    let mut b = self_merging_arc();
    b.name = "sphere and disk".into();
    build_sector(&mut b, 1, true, &[&[FreeCircle]]);
    b
}
