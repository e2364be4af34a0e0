//! Crisp ideals of a BE-algebra, decided two independent ways.
//!
//! A nonempty subset `I` is an ideal when, for all `x ∈ X` and `s, q ∈ I`:
//!
//! 1. `x ∗ s ∈ I`
//! 2. `(s ∗ (q ∗ x)) ∗ x ∈ I`
//!
//! An equivalent characterization: `1 ∈ I`, and whenever `y ∈ I` and
//! `x ∗ (y ∗ z) ∈ I`, also `x ∗ z ∈ I`. Both deciders are implemented
//! literally and cross-checked against each other by the verification
//! campaign; the family of all ideals is written `J(X)`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::BEAlgebra;
use crate::subset::{Subset, SubsetError, MAX_SUBSET_SIZE};
use crate::verdict::Verdict;

/// Why a subset fails an ideal check. Indices refer to algebra elements;
/// each variant names the violated clause of its decider.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "clause")]
pub enum IdealViolation {
    /// Definition clause (1): `x ∗ s ∉ I` with `s ∈ I`.
    Closure { x: usize, s: usize },
    /// Definition clause (2): `(s ∗ (q ∗ x)) ∗ x ∉ I` with `s, q ∈ I`.
    Compound { x: usize, s: usize, q: usize },
    /// Characterization clause (1): `1 ∉ I`.
    UnitMissing,
    /// Characterization clause (2): `y ∈ I` and `x ∗ (y ∗ z) ∈ I` but
    /// `x ∗ z ∉ I`.
    Implication { x: usize, y: usize, z: usize },
}

impl IdealViolation {
    /// Renders the violation with element labels.
    pub fn describe(&self, alg: &BEAlgebra) -> String {
        let l = |i: usize| alg.label(i).to_string();
        match *self {
            IdealViolation::Closure { x, s } => format!(
                "clause (1): {} ∗ {} = {} is outside the subset",
                l(x),
                l(s),
                l(alg.mul(x, s))
            ),
            IdealViolation::Compound { x, s, q } => {
                let v = alg.mul(alg.mul(s, alg.mul(q, x)), x);
                format!(
                    "clause (2): ({} ∗ ({} ∗ {})) ∗ {} = {} is outside the subset",
                    l(s),
                    l(q),
                    l(x),
                    l(x),
                    l(v)
                )
            }
            IdealViolation::UnitMissing => "unit clause: 1 is not a member".to_string(),
            IdealViolation::Implication { x, y, z } => {
                let premise = alg.mul(x, alg.mul(y, z));
                format!(
                    "implication clause: {} and {} ∗ ({} ∗ {}) = {} are members but {} ∗ {} = {} is not",
                    l(y),
                    l(x),
                    l(y),
                    l(z),
                    l(premise),
                    l(x),
                    l(z),
                    l(alg.mul(x, z))
                )
            }
        }
    }

    /// Re-evaluates the named clause on `(alg, subset)` and confirms it is
    /// genuinely violated.
    pub fn violates(&self, alg: &BEAlgebra, subset: &Subset) -> bool {
        match *self {
            IdealViolation::Closure { x, s } => {
                subset.contains(s) && !subset.contains(alg.mul(x, s))
            }
            IdealViolation::Compound { x, s, q } => {
                subset.contains(s)
                    && subset.contains(q)
                    && !subset.contains(alg.mul(alg.mul(s, alg.mul(q, x)), x))
            }
            IdealViolation::UnitMissing => !subset.contains(alg.unit()),
            IdealViolation::Implication { x, y, z } => {
                subset.contains(y)
                    && subset.contains(alg.mul(x, alg.mul(y, z)))
                    && !subset.contains(alg.mul(x, z))
            }
        }
    }
}

fn check_input(alg: &BEAlgebra, subset: &Subset) -> Result<(), SubsetError> {
    if subset.n() != alg.size() {
        return Err(SubsetError::SizeMismatch {
            n: subset.n(),
            algebra: alg.size(),
        });
    }
    if subset.is_empty() {
        return Err(SubsetError::Empty);
    }
    Ok(())
}

/// Decides the ideal definition directly. Scans clause (1) before clause
/// (2), each in lexicographic `(x, s[, q])` order, and reports the first
/// violation.
pub fn is_ideal_def(
    alg: &BEAlgebra,
    subset: &Subset,
) -> Result<Verdict<IdealViolation>, SubsetError> {
    check_input(alg, subset)?;
    let n = alg.size();
    for x in 0..n {
        for s in subset.iter() {
            if !subset.contains(alg.mul(x, s)) {
                return Ok(Verdict::fail(IdealViolation::Closure { x, s }));
            }
        }
    }
    for x in 0..n {
        for s in subset.iter() {
            for q in subset.iter() {
                let v = alg.mul(alg.mul(s, alg.mul(q, x)), x);
                if !subset.contains(v) {
                    return Ok(Verdict::fail(IdealViolation::Compound { x, s, q }));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

/// Decides the equivalent characterization: unit membership plus the
/// implication clause, scanned in lexicographic `(x, y, z)` order.
pub fn is_ideal_lemma(
    alg: &BEAlgebra,
    subset: &Subset,
) -> Result<Verdict<IdealViolation>, SubsetError> {
    check_input(alg, subset)?;
    if !subset.contains(alg.unit()) {
        return Ok(Verdict::fail(IdealViolation::UnitMissing));
    }
    let n = alg.size();
    for x in 0..n {
        for y in subset.iter() {
            for z in 0..n {
                if subset.contains(alg.mul(x, alg.mul(y, z))) && !subset.contains(alg.mul(x, z)) {
                    return Ok(Verdict::fail(IdealViolation::Implication { x, y, z }));
                }
            }
        }
    }
    Ok(Verdict::pass())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealEnumError {
    #[error("cannot scan 2^{0} subsets: size exceeds the cap of {MAX_SUBSET_SIZE}")]
    TooLarge(usize),
}

/// The family `J(X)` of all ideals, sorted by cardinality then mask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealFamily {
    subsets: Vec<Subset>,
}

impl IdealFamily {
    pub fn subsets(&self) -> &[Subset] {
        &self.subsets
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.subsets.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subset> {
        self.subsets.iter()
    }
}

/// Enumerates `J(X)` by scanning all nonempty subsets with [`is_ideal_def`].
pub fn enumerate_ideals(alg: &BEAlgebra) -> Result<IdealFamily, IdealEnumError> {
    let n = alg.size();
    let candidates = Subset::nonempty_subsets(n).map_err(|_| IdealEnumError::TooLarge(n))?;
    let mut subsets: Vec<Subset> = candidates
        .filter(|s| is_ideal_def(alg, s).expect("nonempty, matching size").holds)
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.mask()));
    Ok(IdealFamily { subsets })
}
