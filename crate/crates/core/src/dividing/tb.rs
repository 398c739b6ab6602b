use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg};

use super::{DividingSet, FaceModel};

/// An integer or half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const ONE: HalfInt = HalfInt(2);

    pub fn from_halves(halves: i64) -> Self {
        HalfInt(halves)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn to_int(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_int() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

/// `tb = −count/2` for a Legendrian curve meeting the dividing set `count` times.
pub fn tb_from_intersections(count: u64) -> HalfInt {
    HalfInt(-(count as i64))
}

/// Edge-local tb: minus half the number of dividing endpoints on the edge.
pub fn edge_tb(face: &FaceModel, edge: usize) -> HalfInt {
    tb_from_intersections(face.slots[edge] as u64)
}

pub fn boundary_tb(face: &FaceModel) -> HalfInt {
    tb_from_intersections(face.total_slots() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TbError {
    #[error("face {face} has tb = {tb} > -1, violating the Bennequin bound")]
    Bennequin { face: usize, tb: HalfInt },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbReport {
    pub total: u64,
    /// `−tb(∂F)` per face, in input order.
    pub per_face: Vec<u64>,
}

/// `TB = −Σ tb(∂F)`. Every face must have `tb(∂F) ≤ −1`, so `TB ≥ #faces`.
pub fn tb_triangulation(faces: &[(FaceModel, DividingSet)]) -> Result<TbReport, TbError> {
    let mut per_face = Vec::with_capacity(faces.len());
    for (f, _) in faces {
        let tb = boundary_tb(f);
        if tb > HalfInt::from_int(-1) {
            return Err(TbError::Bennequin { face: f.id, tb });
        }
        per_face.push((f.total_slots() / 2) as u64);
    }
    let total: u64 = per_face.iter().sum();
    assert!(total >= faces.len() as u64, "TB below the face count");
    Ok(TbReport { total, per_face })
}
