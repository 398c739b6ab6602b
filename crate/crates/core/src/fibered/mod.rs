//! Fibered domains, angle functions of adjusted contact structures, and their
//! weights.
//!
//! Angles are exact rationals in half-turns. Two structures adjusted to the
//! same domain differ by whole turns on every sector, so their weight
//! `w = (a − a₀)/2` is an integer vector satisfying the switch system.

mod prune;

pub use prune::{prune, prune_to_closed, remove_sectors, PruneClass, PruneOutcome, PruneSite, Restriction};

use alloc::string::String;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::branched::{validate, BranchedSurface};

pub type Angle = Ratio<i64>;

/// A vertical boundary annulus of the domain and the branch arcs it runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalAnnulus {
    pub arcs: Vec<usize>,
    pub concave: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberedDomain {
    pub surface: BranchedSurface,
    pub annuli: Vec<VerticalAnnulus>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiberedError {
    #[error("quotient is not a valid branched surface: {0}")]
    Invalid(String),
    #[error("branch arc {arc} is covered by {count} vertical annuli, at most two allowed")]
    Overcovered { arc: usize, count: usize },
    #[error("branch arc {arc} is not the image of a concave vertical annulus")]
    NotSingular { arc: usize },
    #[error("vertical annulus {annulus} references missing arc {arc}")]
    DanglingArc { annulus: usize, arc: usize },
    #[error("angle table has {len} entries for {expected} sectors")]
    LengthMismatch { len: usize, expected: usize },
    #[error("angle on sector {sector} is not positive")]
    NonPositive { sector: usize },
    #[error("angles differ by a non-integer number of turns on sector {sector}")]
    NotWholeTurns { sector: usize },
    #[error("weight violates the switch equation of arc {arc}")]
    NotAdmissible { arc: usize },
    #[error("weight {weight} on sector {sector} is at or below the lower bound")]
    BelowBound { sector: usize, weight: i64 },
    #[error("structure {label} has angle {angle} on sector {sector}, not below the cap {cap}")]
    CapExceeded { label: String, sector: usize, angle: Angle, cap: Angle },
    #[error("no boundary point at {0}")]
    BadSite(String),
    #[error("integer overflow")]
    Overflow,
}

impl FiberedDomain {
    /// The domain whose vertical boundary is one concave annulus per smooth
    /// branch curve.
    pub fn over(surface: BranchedSurface) -> Self {
        let annuli = surface.branch_curves().into_iter().map(|arcs| VerticalAnnulus { arcs, concave: true }).collect();
        FiberedDomain { surface, annuli }
    }

    pub fn sector_count(&self) -> usize {
        self.surface.sector_count()
    }

    /// Sectors meeting the boundary of the quotient.
    pub fn boundary_sectors(&self) -> Vec<usize> {
        (0..self.surface.sectors.len()).filter(|&s| self.surface.sectors[s].has_free_side()).collect()
    }

    pub fn singular_arcs(&self) -> Vec<usize> {
        let mut arcs: Vec<usize> = self.annuli.iter().filter(|a| a.concave).flat_map(|a| a.arcs.iter().copied()).collect();
        arcs.sort_unstable();
        arcs.dedup();
        arcs
    }

    pub fn check(&self) -> Result<(), FiberedError> {
        let report = validate(&self.surface);
        if !report.is_pass() {
            return Err(FiberedError::Invalid(alloc::format!("{report}")));
        }
        let n = self.surface.branch_arcs.len();
        let mut cover = alloc::vec![0usize; n];
        for (i, a) in self.annuli.iter().enumerate() {
            for &arc in &a.arcs {
                if arc >= n {
                    return Err(FiberedError::DanglingArc { annulus: i, arc });
                }
                cover[arc] += 1;
            }
        }
        if let Some(arc) = cover.iter().position(|&c| c > 2) {
            return Err(FiberedError::Overcovered { arc, count: cover[arc] });
        }
        let singular = self.singular_arcs();
        if let Some(arc) = (0..n).find(|a| singular.binary_search(a).is_err()) {
            return Err(FiberedError::NotSingular { arc });
        }
        Ok(())
    }
}

/// The quotient branched surface `M/τ`.
pub fn quotient(fd: &FiberedDomain) -> Result<BranchedSurface, FiberedError> {
    fd.check()?;
    Ok(fd.surface.clone())
}

/// Total rotation along the fibers over each sector, in half-turns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleFunction(Vec<Angle>);

impl AngleFunction {
    pub fn new(values: Vec<Angle>) -> Result<Self, FiberedError> {
        if let Some(sector) = values.iter().position(|a| !a.is_positive()) {
            return Err(FiberedError::NonPositive { sector });
        }
        Ok(AngleFunction(values))
    }

    pub fn from_integers(values: &[i64]) -> Result<Self, FiberedError> {
        Self::new(values.iter().map(|&v| Angle::from_integer(v)).collect())
    }

    pub fn values(&self) -> &[Angle] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<Angle> {
        self.0.iter().copied().max()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjustedStructure {
    pub label: String,
    pub angle: AngleFunction,
}

impl AdjustedStructure {
    pub fn new(label: impl Into<String>, angle: AngleFunction) -> Self {
        AdjustedStructure { label: label.into(), angle }
    }
}

fn check_weight(fd: &FiberedDomain, base: &AdjustedStructure, w: &[i64]) -> Result<(), FiberedError> {
    let d = fd.sector_count();
    if w.len() != d || base.angle.len() != d {
        return Err(FiberedError::LengthMismatch { len: w.len().min(base.angle.len()), expected: d });
    }
    for (arc, a) in fd.surface.branch_arcs.iter().enumerate() {
        let lhs = w[a.merged] as i128;
        if lhs != w[a.upper] as i128 + w[a.lower] as i128 {
            return Err(FiberedError::NotAdmissible { arc });
        }
    }
    for (sector, (&wi, &a0)) in w.iter().zip(base.angle.values()).enumerate() {
        // w > −a₀/2
        if Angle::from_integer(2) * Angle::from_integer(wi) + a0 <= Angle::zero() {
            return Err(FiberedError::BelowBound { sector, weight: wi });
        }
    }
    Ok(())
}

/// `w = (a − a₀)/2`, checked against the switch system and the lower bound.
pub fn weight_of(fd: &FiberedDomain, x: &AdjustedStructure, base: &AdjustedStructure) -> Result<Vec<i64>, FiberedError> {
    let d = fd.sector_count();
    for a in [x, base] {
        if a.angle.len() != d {
            return Err(FiberedError::LengthMismatch { len: a.angle.len(), expected: d });
        }
    }
    let mut w = Vec::with_capacity(d);
    for (sector, (&a, &a0)) in x.angle.values().iter().zip(base.angle.values()).enumerate() {
        let half = (a - a0) / Angle::from_integer(2);
        if !half.denom().is_one() {
            return Err(FiberedError::NotWholeTurns { sector });
        }
        w.push(half.to_integer());
    }
    check_weight(fd, base, &w)?;
    Ok(w)
}

/// `a = a₀ + 2w`.
pub fn structure_from_weight(
    fd: &FiberedDomain,
    base: &AdjustedStructure,
    w: &[i64],
    label: impl Into<String>,
) -> Result<AdjustedStructure, FiberedError> {
    check_weight(fd, base, w)?;
    let values = base
        .angle
        .values()
        .iter()
        .zip(w)
        .map(|(&a0, &wi)| wi.checked_mul(2).map(|t| a0 + Angle::from_integer(t)).ok_or(FiberedError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AdjustedStructure::new(label, AngleFunction::new(values)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fig1() -> FiberedDomain {
        FiberedDomain::over(fixtures::fig1_local())
    }

    #[test]
    fn product_has_no_singular_locus() {
        let fd = FiberedDomain { surface: fixtures::closed_genus(1), annuli: alloc::vec![] };
        let q = quotient(&fd).unwrap();
        assert!(q.branch_arcs.is_empty());
        assert!(fd.singular_arcs().is_empty());
    }

    #[test]
    fn fig1_quotient() {
        let fd = fig1();
        assert_eq!(fd.annuli.len(), 2);
        let q = quotient(&fd).unwrap();
        assert_eq!(q.branch_curves().len(), 2);
        assert_eq!(q.triple_points.len(), 1);
    }

    #[test]
    fn triple_cover_is_rejected() {
        let mut fd = fig1();
        let arc = fd.annuli[0].arcs[0];
        fd.annuli.push(VerticalAnnulus { arcs: alloc::vec![arc], concave: true });
        fd.annuli.push(VerticalAnnulus { arcs: alloc::vec![arc], concave: false });
        assert_eq!(quotient(&fd), Err(FiberedError::Overcovered { arc, count: 3 }));
        let mut fd = fig1();
        fd.annuli[1].concave = false;
        assert!(matches!(quotient(&fd), Err(FiberedError::NotSingular { .. })));
    }

    #[test]
    fn weights_round_trip() {
        let fd = fig1();
        let base = AdjustedStructure::new("base", AngleFunction::from_integers(&[1; 6]).unwrap());
        assert_eq!(weight_of(&fd, &base, &base).unwrap(), alloc::vec![0; 6]);
        for g in fixtures::fig1_generators() {
            let w = g.to_signed();
            let x = structure_from_weight(&fd, &base, &w, "x").unwrap();
            assert_eq!(weight_of(&fd, &x, &base).unwrap(), w);
        }
    }

    #[test]
    fn half_turn_difference_is_rejected() {
        let fd = fig1();
        let base = AdjustedStructure::new("base", AngleFunction::from_integers(&[1; 6]).unwrap());
        let mut v = alloc::vec![Angle::one(); 6];
        v[4] = Angle::from_integer(2);
        let x = AdjustedStructure::new("x", AngleFunction::new(v).unwrap());
        assert_eq!(weight_of(&fd, &x, &base), Err(FiberedError::NotWholeTurns { sector: 4 }));
    }

    #[test]
    fn lower_bound() {
        let fd = FiberedDomain::over(fixtures::closed_genus(1));
        let base = AdjustedStructure::new("base", AngleFunction::new(alloc::vec![Angle::new(5, 2)]).unwrap());
        assert!(structure_from_weight(&fd, &base, &[-1], "x").is_ok());
        assert_eq!(structure_from_weight(&fd, &base, &[-2], "x"), Err(FiberedError::BelowBound { sector: 0, weight: -2 }));
        assert!(AngleFunction::from_integers(&[1, 0]).is_err());
    }
}
