//! Minimal generators of the monoid `W ∩ ℕ^d`, where `W` is the solution space
//! of a homogeneous integer system `A·x = 0`.
//!
//! [`minimal_generators`] runs the Contejean–Devie completion: starting from the
//! unit vectors it extends non-solutions `x` by `e_j` whenever
//! `⟨A·x, A·e_j⟩ < 0` and discards every candidate that dominates a solution
//! already found. Solutions are discovered in order of increasing coordinate
//! sum, so each one is `⪯`-minimal when it appears.
//!
//! [`brute_force_minimals`] is an independent bounded enumeration used as an
//! oracle by the tests and the `hilbert --oracle-bound` command.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::weight::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HilbertError {
    #[error("cone dimension must be at least 1")]
    ZeroDimension,
    #[error("relation {row} has length {len}, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("vector has length {len}, expected {expected}")]
    LengthMismatch { len: usize, expected: usize },
    #[error("vector is not an element of the cone")]
    NotAdmissible,
    #[error("not generated: remainder {remainder} has no basis element below it")]
    NotGenerated { remainder: WeightVector },
    #[error("enumeration budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("integer overflow during cone arithmetic")]
    Overflow,
}

/// The homogeneous system `relations · x = 0` on `ℕ^dimension`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSystem {
    dimension: usize,
    relations: Vec<Vec<i64>>,
    provenance: Option<String>,
}

impl ConeSystem {
    pub fn new(dimension: usize, relations: Vec<Vec<i64>>) -> Result<Self, HilbertError> {
        if dimension == 0 {
            return Err(HilbertError::ZeroDimension);
        }
        for (row, r) in relations.iter().enumerate() {
            if r.len() != dimension {
                return Err(HilbertError::RowLength { row, len: r.len(), expected: dimension });
            }
        }
        Ok(ConeSystem { dimension, relations, provenance: None })
    }

    /// Tags the system with the name of the object it was derived from.
    pub fn with_provenance(mut self, name: impl Into<String>) -> Self {
        self.provenance = Some(name.into());
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn relations(&self) -> &[Vec<i64>] {
        &self.relations
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    fn image(&self, x: &[u64]) -> Result<Vec<i64>, HilbertError> {
        self.relations
            .iter()
            .map(|r| {
                let mut acc: i128 = 0;
                for (c, v) in r.iter().zip(x) {
                    acc += (*c as i128) * (*v as i128);
                }
                i64::try_from(acc).map_err(|_| HilbertError::Overflow)
            })
            .collect()
    }

    /// True iff `w` has nonnegative entries and satisfies every relation.
    pub fn contains(&self, w: &[i64]) -> Result<bool, HilbertError> {
        if w.len() != self.dimension {
            return Err(HilbertError::LengthMismatch { len: w.len(), expected: self.dimension });
        }
        if w.iter().any(|&x| x < 0) {
            return Ok(false);
        }
        let ok = self.relations.iter().all(|r| {
            let acc: i128 = r.iter().zip(w).map(|(c, v)| (*c as i128) * (*v as i128)).sum();
            acc == 0
        });
        Ok(ok)
    }

    pub fn contains_weight(&self, w: &WeightVector) -> Result<bool, HilbertError> {
        if w.len() != self.dimension {
            return Err(HilbertError::LengthMismatch { len: w.len(), expected: self.dimension });
        }
        Ok(self.image(w.as_slice())?.iter().all(|&v| v == 0))
    }
}

/// The `⪯`-minimal nonzero elements of a cone, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalGenerators {
    basis: Vec<WeightVector>,
    system: ConeSystem,
}

impl MinimalGenerators {
    /// Wraps an explicit (possibly truncated) basis. Elements are sorted and
    /// must lie in the cone.
    pub fn from_basis(system: ConeSystem, mut basis: Vec<WeightVector>) -> Result<Self, HilbertError> {
        for u in &basis {
            if u.is_zero() || !system.contains_weight(u)? {
                return Err(HilbertError::NotAdmissible);
            }
        }
        basis.sort();
        basis.dedup();
        Ok(MinimalGenerators { basis, system })
    }

    pub fn basis(&self) -> &[WeightVector] {
        &self.basis
    }

    pub fn system(&self) -> &ConeSystem {
        &self.system
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Σ coefficients[i]·basis[i].
    pub fn recompose(&self, coefficients: &[u64]) -> Result<WeightVector, HilbertError> {
        if coefficients.len() != self.basis.len() {
            return Err(HilbertError::LengthMismatch { len: coefficients.len(), expected: self.basis.len() });
        }
        let mut acc = WeightVector::zeros(self.system.dimension);
        for (u, &n) in self.basis.iter().zip(coefficients) {
            let term = u.checked_scale(n).ok_or(HilbertError::Overflow)?;
            acc = acc.checked_add(&term).ok_or(HilbertError::Overflow)?;
        }
        Ok(acc)
    }
}

pub fn minimal_generators(system: &ConeSystem) -> Result<MinimalGenerators, HilbertError> {
    let d = system.dimension;
    let columns: Vec<Vec<i64>> = (0..d).map(|j| system.relations.iter().map(|r| r[j]).collect()).collect();

    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<(Vec<u64>, Vec<i64>)> = (0..d)
        .map(|j| {
            let mut e = alloc::vec![0u64; d];
            e[j] = 1;
            (e, columns[j].clone())
        })
        .collect();

    while !frontier.is_empty() {
        let (solved, open): (Vec<_>, Vec<_>) = frontier.into_iter().partition(|(_, ax)| ax.iter().all(|&v| v == 0));
        basis.extend(solved.into_iter().map(|(x, _)| x));

        let mut next: BTreeSet<Vec<u64>> = BTreeSet::new();
        for (x, ax) in &open {
            for (j, col) in columns.iter().enumerate() {
                let mut dot: i128 = 0;
                for (a, c) in ax.iter().zip(col) {
                    dot += (*a as i128) * (*c as i128);
                }
                if dot >= 0 {
                    continue;
                }
                let mut y = x.clone();
                y[j] = y[j].checked_add(1).ok_or(HilbertError::Overflow)?;
                if basis.iter().any(|b| dominated(b, &y)) {
                    continue;
                }
                next.insert(y);
            }
        }
        frontier = next.into_iter().map(|y| system.image(&y).map(|ay| (y, ay))).collect::<Result<_, _>>()?;
    }

    let mut basis: Vec<WeightVector> = basis.into_iter().map(WeightVector::new).collect();
    basis.sort();
    Ok(MinimalGenerators { basis, system: system.clone() })
}

fn dominated(lower: &[u64], upper: &[u64]) -> bool {
    lower.iter().zip(upper).all(|(a, b)| a <= b)
}

/// Greedy decomposition of `w` over `generators`: repeatedly subtract the
/// lexicographically first basis element below the remainder. The zero vector
/// decomposes with all coefficients zero.
pub fn decompose(w: &WeightVector, generators: &MinimalGenerators) -> Result<Vec<u64>, HilbertError> {
    let system = generators.system();
    if !system.contains_weight(w)? {
        return Err(HilbertError::NotAdmissible);
    }
    let mut coefficients = alloc::vec![0u64; generators.len()];
    let mut rest = w.clone();
    while !rest.is_zero() {
        let Some((i, u)) = generators.basis.iter().enumerate().find(|(_, u)| u.precedes(&rest)) else {
            return Err(HilbertError::NotGenerated { remainder: rest });
        };
        // The same element stays first while it fits, so take every copy at once.
        let times = u.as_slice().iter().zip(rest.as_slice()).filter(|(a, _)| **a > 0).map(|(a, r)| r / a).min().unwrap_or(1);
        rest = rest.checked_sub(&u.checked_scale(times).ok_or(HilbertError::Overflow)?).ok_or(HilbertError::Overflow)?;
        coefficients[i] += times;
    }
    Ok(coefficients)
}

/// Exhaustively enumerates `x ∈ ℕ^d` with `max x ≤ bound` (pruning partial
/// assignments as soon as a relation is fully assigned and fails), and returns the
/// `⪯`-minimal nonzero solutions in lexicographic order. `budget` caps the
/// number of search nodes.
pub fn brute_force_minimals(system: &ConeSystem, bound: u64, budget: u64) -> Result<Vec<WeightVector>, HilbertError> {
    let d = system.dimension;
    // For each coordinate, the relations whose last nonzero coefficient sits there.
    let mut closing: Vec<Vec<usize>> = alloc::vec![Vec::new(); d];
    for (ri, r) in system.relations.iter().enumerate() {
        if let Some(last) = r.iter().rposition(|&c| c != 0) {
            closing[last].push(ri)
        }
    }
    let mut solutions = Vec::new();
    let mut current = alloc::vec![0u64; d];
    let mut nodes = 0u64;
    enumerate(system, &closing, bound, budget, 0, &mut current, &mut nodes, &mut solutions)?;

    solutions.sort_by(|a: &Vec<u64>, b: &Vec<u64>| {
        let sa: u64 = a.iter().sum();
        let sb: u64 = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    let mut minimal: Vec<Vec<u64>> = Vec::new();
    for s in solutions {
        if !minimal.iter().any(|m| dominated(m, &s)) {
            minimal.push(s);
        }
    }
    let mut out: Vec<WeightVector> = minimal.into_iter().map(WeightVector::new).collect();
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    system: &ConeSystem,
    closing: &[Vec<usize>],
    bound: u64,
    budget: u64,
    depth: usize,
    current: &mut Vec<u64>,
    nodes: &mut u64,
    out: &mut Vec<Vec<u64>>,
) -> Result<(), HilbertError> {
    if depth == current.len() {
        if current.iter().any(|&x| x > 0) {
            out.push(current.clone());
        }
        return Ok(());
    }
    for v in 0..=bound {
        *nodes += 1;
        if *nodes > budget {
            return Err(HilbertError::BudgetExceeded { budget });
        }
        current[depth] = v;
        let ok = closing[depth].iter().all(|&ri| {
            let r = &system.relations[ri];
            let acc: i128 = r[..=depth].iter().zip(&current[..=depth]).map(|(c, x)| (*c as i128) * (*x as i128)).sum();
            acc == 0
        });
        if ok {
            enumerate(system, closing, bound, budget, depth + 1, current, nodes, out)?;
        }
    }
    current[depth] = 0;
    Ok(())
}
