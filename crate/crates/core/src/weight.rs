use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index};

/// Nonnegative integer weights, one per sector (or per coordinate of a cone).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(weights: Vec<u64>) -> Self {
        WeightVector(weights)
    }

    pub fn zeros(len: usize) -> Self {
        WeightVector(alloc::vec![0; len])
    }

    /// Converts signed coordinates, failing on the first negative entry.
    pub fn from_signed(values: &[i64]) -> Option<Self> {
        values.iter().map(|&v| u64::try_from(v).ok()).collect::<Option<Vec<_>>>().map(WeightVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Every entry strictly positive.
    pub fn is_fully_carried(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    /// Componentwise `self ⪯ other`.
    pub fn precedes(&self, other: &WeightVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &WeightVector) -> Option<WeightVector> {
        if self.len() != other.len() {
            return None;
        }
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(*b)).collect::<Option<Vec<_>>>().map(WeightVector)
    }

    pub fn checked_sub(&self, other: &WeightVector) -> Option<WeightVector> {
        if self.len() != other.len() {
            return None;
        }
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(WeightVector)
    }

    pub fn checked_scale(&self, factor: u64) -> Option<WeightVector> {
        self.0.iter().map(|a| a.checked_mul(factor)).collect::<Option<Vec<_>>>().map(WeightVector)
    }

    pub fn max_entry(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }
}

impl From<Vec<u64>> for WeightVector {
    fn from(v: Vec<u64>) -> Self {
        WeightVector(v)
    }
}

impl Index<usize> for WeightVector {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    /// Panics on length mismatch or overflow; use [`WeightVector::checked_add`] otherwise.
    fn add(self, rhs: &WeightVector) -> WeightVector {
        self.checked_add(rhs).expect("weight vectors of equal length without overflow")
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}
