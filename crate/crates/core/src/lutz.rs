//! Lutz modifications at the level of weights.
//!
//! Every minimal generator `u_i` of the weight cone carries either a torus or
//! a Klein bottle. A Lutz modification along a torus adds its weight; along the
//! boundary torus of a Klein bottle's tubular neighbourhood it adds `2u_i`. Odd
//! multiples of a Klein generator are reached from a half-twist base variant,
//! whose base weight already contains one copy of `u_i`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::branched::{carried_surface, BranchedError, BranchedSurface, Classification};
use crate::hilbert::{decompose, HilbertError, MinimalGenerators};
use crate::weight::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LutzError {
    #[error("generator {index} carries neither a torus nor a Klein bottle")]
    OtherGenerator { index: usize },
    #[error("re-base required: target minus base is not in the cone")]
    ReBaseRequired,
    #[error("plan has {len} coefficients, expected {expected}")]
    LengthMismatch { len: usize, expected: usize },
    #[error("base variant names unknown or non-Klein generator {index}")]
    BadVariant { index: usize },
    #[error("integer overflow")]
    Overflow,
    #[error(transparent)]
    Branched(#[from] BranchedError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
}

/// What the carried surface of a generator is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Torus,
    KleinBottle,
    Other,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Torus => "torus",
            GeneratorKind::KleinBottle => "klein_bottle",
            GeneratorKind::Other => "other",
        }
    }
}

/// Minimal generators tagged with their kinds and planning weights
/// (`u_i` for tori and others, `2u_i` for Klein bottles).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedGenerators {
    generators: MinimalGenerators,
    kinds: Vec<GeneratorKind>,
    planning: Vec<WeightVector>,
}

impl ClassifiedGenerators {
    /// Treats every generator as a torus; for cones with no surface behind them.
    pub fn all_tori(generators: MinimalGenerators) -> Self {
        let kinds = alloc::vec![GeneratorKind::Torus; generators.len()];
        let planning = generators.basis().to_vec();
        ClassifiedGenerators { generators, kinds, planning }
    }

    pub fn generators(&self) -> &MinimalGenerators {
        &self.generators
    }

    pub fn kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    pub fn planning_weights(&self) -> &[WeightVector] {
        &self.planning
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn klein_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.kinds[i] == GeneratorKind::KleinBottle).collect()
    }

    /// Every base variant: one per subset of Klein generators given a half
    /// twist, in increasing subset order. The first is the plain base.
    pub fn base_variants(&self, name: &str, base: &WeightVector) -> Result<Vec<(BaseLabel, WeightVector)>, LutzError> {
        let klein = self.klein_indices();
        if klein.len() >= 63 {
            return Err(LutzError::Overflow);
        }
        (0u64..1 << klein.len())
            .map(|mask| {
                let half_twists: Vec<usize> =
                    klein.iter().enumerate().filter(|(bit, _)| mask >> bit & 1 == 1).map(|(_, &i)| i).collect();
                let label = BaseLabel { name: name.into(), half_twists };
                self.variant_weight(&label, base).map(|w| (label, w))
            })
            .collect()
    }

    /// `base + Σ u_i` over the label's half-twisted Klein generators.
    pub fn variant_weight(&self, label: &BaseLabel, base: &WeightVector) -> Result<WeightVector, LutzError> {
        let mut w = base.clone();
        for &i in &label.half_twists {
            if self.kinds.get(i) != Some(&GeneratorKind::KleinBottle) {
                return Err(LutzError::BadVariant { index: i });
            }
            w = w.checked_add(&self.generators.basis()[i]).ok_or(LutzError::Overflow)?;
        }
        Ok(w)
    }
}

/// A base structure, possibly with half twists along some Klein generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BaseLabel {
    pub name: String,
    pub half_twists: Vec<usize>,
}

impl core::fmt::Display for BaseLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.name)?;
        for i in &self.half_twists {
            write!(f, "+½T{i}")?;
        }
        Ok(())
    }
}

/// Coefficients `n_i` on the planning weights, applied to a base variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LutzPlan {
    pub base: BaseLabel,
    pub coefficients: Vec<u64>,
}

impl LutzPlan {
    pub fn is_empty(&self) -> bool {
        self.coefficients.iter().all(|&n| n == 0)
    }

    /// `n_i mod 2` for each generator.
    pub fn parity(&self) -> Vec<u8> {
        self.coefficients.iter().map(|n| (n % 2) as u8).collect()
    }
}

/// Runs the carried-surface construction on every generator.
pub fn classify_generators(b: &BranchedSurface, g: MinimalGenerators) -> Result<ClassifiedGenerators, LutzError> {
    let mut kinds = Vec::with_capacity(g.len());
    let mut planning = Vec::with_capacity(g.len());
    for u in g.basis() {
        let s = carried_surface(b, u)?;
        let kind = match s.components.as_slice() {
            [c] if c.classification == Classification::Torus => GeneratorKind::Torus,
            [c] if c.classification == Classification::KleinBottle => GeneratorKind::KleinBottle,
            _ => GeneratorKind::Other,
        };
        planning.push(if kind == GeneratorKind::KleinBottle {
            u.checked_scale(2).ok_or(LutzError::Overflow)?
        } else {
            u.clone()
        });
        kinds.push(kind);
    }
    Ok(ClassifiedGenerators { generators: g, kinds, planning })
}

/// `variant_base_weight + Σ n_i · planning_i`.
pub fn realize(
    plan: &LutzPlan,
    gens: &ClassifiedGenerators,
    variant_base_weight: &WeightVector,
) -> Result<WeightVector, LutzError> {
    if plan.coefficients.len() != gens.len() {
        return Err(LutzError::LengthMismatch { len: plan.coefficients.len(), expected: gens.len() });
    }
    let mut w = variant_base_weight.clone();
    for (i, &n) in plan.coefficients.iter().enumerate() {
        if n == 0 {
            continue;
        }
        if gens.kinds[i] == GeneratorKind::Other {
            return Err(LutzError::OtherGenerator { index: i });
        }
        let term = gens.planning[i].checked_scale(n).ok_or(LutzError::Overflow)?;
        w = w.checked_add(&term).ok_or(LutzError::Overflow)?;
    }
    Ok(w)
}

/// Decomposes `target − base` over the generators. An odd multiple of a Klein
/// generator moves one copy into a half-twist base variant.
pub fn plan_for(
    name: &str,
    target: &WeightVector,
    base: &WeightVector,
    gens: &ClassifiedGenerators,
) -> Result<LutzPlan, LutzError> {
    let diff = target.checked_sub(base).ok_or(LutzError::ReBaseRequired)?;
    let n = match decompose(&diff, gens.generators()) {
        Ok(n) => n,
        Err(HilbertError::NotAdmissible) => return Err(LutzError::ReBaseRequired),
        Err(e) => return Err(e.into()),
    };
    let mut half_twists = Vec::new();
    let mut coefficients = Vec::with_capacity(n.len());
    for (i, &ni) in n.iter().enumerate() {
        match gens.kinds[i] {
            GeneratorKind::Other if ni > 0 => return Err(LutzError::OtherGenerator { index: i }),
            GeneratorKind::KleinBottle => {
                if ni % 2 == 1 {
                    half_twists.push(i);
                }
                coefficients.push(ni / 2);
            }
            _ => coefficients.push(ni),
        }
    }
    Ok(LutzPlan { base: BaseLabel { name: name.into(), half_twists }, coefficients })
}

/// All distinct `base + Σ n_i · planning_i` with `Σ n_i ≤ bound`, by total
/// degree and then lexicographically in the coefficients. Generators of kind
/// `Other` are skipped.
pub fn enumerate_structures<'a>(gens: &'a ClassifiedGenerators, base: &WeightVector, bound: u64) -> Structures<'a> {
    let usable = (0..gens.len()).filter(|&i| gens.kinds[i] != GeneratorKind::Other).collect();
    Structures { gens, usable, base: base.clone(), bound, degree: 0, current: None, seen: BTreeSet::new() }
}

/// Iterator returned by [`enumerate_structures`].
pub struct Structures<'a> {
    gens: &'a ClassifiedGenerators,
    usable: Vec<usize>,
    base: WeightVector,
    bound: u64,
    degree: u64,
    // Coefficients on `usable`, summing to `degree`.
    current: Option<Vec<u64>>,
    seen: BTreeSet<WeightVector>,
}

impl Structures<'_> {
    // Next composition of `degree` into `usable.len()` parts, in lexicographic order.
    fn advance(&mut self) -> bool {
        let k = self.usable.len();
        match &mut self.current {
            None => {
                if k == 0 && self.degree > 0 {
                    return false;
                }
                let mut c = alloc::vec![0u64; k];
                if k > 0 {
                    c[k - 1] = self.degree;
                }
                self.current = Some(c);
                true
            }
            Some(c) => {
                // Lexicographic successor: find the rightmost position i < k-1 with
                // something to its right, bump it, and move the remainder to the end.
                if k < 2 {
                    return false;
                }
                let mut i = k - 1;
                loop {
                    if i == 0 {
                        return false;
                    }
                    i -= 1;
                    let tail: u64 = c[i + 1..].iter().sum();
                    if tail > 0 {
                        c[i] += 1;
                        for x in &mut c[i + 1..] {
                            *x = 0;
                        }
                        c[k - 1] = tail - 1;
                        return true;
                    }
                }
            }
        }
    }
}

impl Iterator for Structures<'_> {
    type Item = WeightVector;

    fn next(&mut self) -> Option<WeightVector> {
        loop {
            if self.degree > self.bound {
                return None;
            }
            if !self.advance() {
                self.degree += 1;
                self.current = None;
                continue;
            }
            let c = self.current.as_ref().expect("advance sets a composition");
            let mut w = self.base.clone();
            for (&i, &n) in self.usable.iter().zip(c) {
                w = w.checked_add(&self.gens.planning[i].checked_scale(n)?)?;
            }
            if self.seen.insert(w.clone()) {
                return Some(w);
            }
        }
    }
}
