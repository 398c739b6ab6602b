#![allow(dead_code)]

use std::collections::BTreeSet;

use branchweight_core::branched::{BranchArc, BranchedSurface, Endpoint, Role, Sector, Side};
use branchweight_core::dividing::{DividingSet, FaceModel};
use branchweight_core::hilbert::ConeSystem;
use branchweight_core::WeightVector;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `x[m] = x[u] + x[l]` relations on distinct coordinates.
pub fn random_switch_system(r: &mut ChaCha8Rng, max_d: usize, max_rel: usize) -> ConeSystem {
    let d = r.gen_range(3..=max_d);
    let k = r.gen_range(1..=max_rel);
    let mut rows = Vec::new();
    for _ in 0..k {
        let mut idx: Vec<usize> = (0..d).collect();
        idx.shuffle(r);
        let mut row = vec![0i64; d];
        row[idx[0]] += 1;
        row[idx[1]] -= 1;
        row[idx[2]] -= 1;
        rows.push(row);
    }
    ConeSystem::new(d, rows).unwrap()
}

/// All points of the cone with entries at most `bound`.
pub fn lattice_points(s: &ConeSystem, bound: u64) -> Vec<WeightVector> {
    let d = s.dimension();
    let rows = s.relations();
    // Each relation is checked once its last nonzero coordinate is fixed.
    let last: Vec<usize> = rows.iter().map(|r| r.iter().rposition(|&c| c != 0).unwrap_or(0)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; d];
    fn go(k: usize, cur: &mut Vec<i64>, rows: &[Vec<i64>], last: &[usize], bound: u64, out: &mut Vec<WeightVector>) {
        if k == cur.len() {
            out.push(WeightVector::from_signed(cur).unwrap());
            return;
        }
        for v in 0..=bound as i64 {
            cur[k] = v;
            let ok = rows
                .iter()
                .zip(last)
                .filter(|(_, &l)| l == k)
                .all(|(r, _)| r.iter().zip(cur.iter()).map(|(a, b)| a * b).sum::<i64>() == 0);
            if ok {
                go(k + 1, cur, rows, last, bound, out);
            }
        }
        cur[k] = 0;
    }
    go(0, &mut cur, rows, &last, bound, &mut out);
    out
}

/// A random balanced bracket word of `2k` letters, read as a non-crossing matching.
pub fn random_matching(r: &mut ChaCha8Rng, k: usize) -> Vec<(usize, usize)> {
    // Uniform among words with k opens and k closes, then cyclically rotated to a Dyck word.
    let mut w: Vec<i32> = std::iter::repeat_n(1, k).chain(std::iter::repeat_n(-1, k)).collect();
    w.shuffle(r);
    let mut h = 0;
    let mut min = (0, 0);
    for (i, &x) in w.iter().enumerate() {
        h += x;
        if h < min.0 {
            min = (h, i + 1);
        }
    }
    let len = w.len().max(1);
    w.rotate_left(min.1 % len);
    let mut stack = Vec::new();
    let mut out = Vec::new();
    for (i, &x) in w.iter().enumerate() {
        if x == 1 {
            stack.push(i);
        } else {
            out.push((stack.pop().unwrap(), i));
        }
    }
    out
}

/// A hexagon face with `k` random non-crossing arcs, its slots spread
/// randomly over the three edges and the whole picture rotated.
pub fn random_face(r: &mut ChaCha8Rng, id: usize, k: usize) -> (FaceModel, DividingSet) {
    let n = 2 * k;
    let a = r.gen_range(0..=n);
    let b = r.gen_range(0..=n);
    let (a, b) = (a.min(b), a.max(b));
    let mut face = FaceModel::new(id, [a, b - a, n - b]);
    face.reversed = r.gen_bool(0.2);
    let shift = if n == 0 { 0 } else { r.gen_range(0..n) };
    let arcs =
        random_matching(r, k).into_iter().map(|(p, q)| (face.slot_at((p + shift) % n), face.slot_at((q + shift) % n))).collect();
    let d = DividingSet::new(&face, arcs).unwrap();
    (face, d)
}

pub fn chords(face: &FaceModel, d: &DividingSet) -> BTreeSet<(usize, usize)> {
    d.arcs()
        .iter()
        .map(|&(a, b)| {
            let (p, q) = (face.position(a).unwrap(), face.position(b).unwrap());
            (p.min(q), p.max(q))
        })
        .collect()
}

pub fn is_noncrossing_perfect(face: &FaceModel, d: &DividingSet) -> bool {
    let c = chords(face, d);
    let mut seen = BTreeSet::new();
    for &(p, q) in &c {
        if p == q || !seen.insert(p) || !seen.insert(q) {
            return false;
        }
    }
    if seen.len() != face.total_slots() {
        return false;
    }
    c.iter().all(|&(p, q)| c.iter().all(|&(x, y)| !(p < x && x < q && q < y)))
}

/// Branched surfaces whose branch locus is a union of disjoint circles. Each
/// sector is a closed surface with one hole per side; sides may be flipped.
pub fn random_closed_arc_surface(r: &mut ChaCha8Rng) -> BranchedSurface {
    let s = r.gen_range(3..=6);
    let k = r.gen_range(1..=4);
    let mut b = BranchedSurface::new("random");
    let mut cycles: Vec<Vec<Vec<Side>>> = vec![Vec::new(); s];
    for arc in 0..k {
        let mut idx: Vec<usize> = (0..s).collect();
        idx.shuffle(r);
        b.branch_arcs.push(BranchArc {
            merged: idx[0],
            upper: idx[1],
            lower: idx[2],
            start: Endpoint::Closed,
            end: Endpoint::Closed,
        });
        for (role, sector) in [(Role::Merged, idx[0]), (Role::Upper, idx[1]), (Role::Lower, idx[2])] {
            let side = Side::Branch { arc, role, reversed: r.gen_bool(0.5), flipped: r.gen_bool(0.3) };
            cycles[sector].push(vec![side]);
        }
    }
    for c in cycles {
        let holes = c.len() as i64;
        let orientable = r.gen_bool(0.7);
        let genus = r.gen_range(0..=1);
        let euler_char = if orientable { 2 - 2 * genus - holes } else { 1 - genus - holes };
        b.sectors.push(Sector { euler_char, orientable, boundary_cycles: c });
    }
    b
}

/// A random nonnegative combination of `basis` with coefficients below `max`.
pub fn random_combination(r: &mut ChaCha8Rng, basis: &[WeightVector], d: usize, max: u64) -> WeightVector {
    let mut w = WeightVector::zeros(d);
    for g in basis {
        let n = r.gen_range(0..max);
        w = w.checked_add(&g.checked_scale(n).unwrap()).unwrap();
    }
    w
}
