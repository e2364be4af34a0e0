//! The conditional-point ideal notion, decided four independent ways, and
//! the theorem checks built on it.
//!
//! For a parameter `k ∈ (-1, 0]` with boundary `β = (-k-1)/2`, an
//! N-structure `(X, f)` is an `([e], [e]∨[c_k])`-ideal when, for all
//! thresholds in `[-1, 0)`:
//!
//! 1. if `y/t` is employed, then `(x∗y)/t` is employed or conditionally
//!    employed;
//! 2. if `x/t` and `y/r` are employed, then `((x∗(y∗z))∗z)/max{t,r}` is
//!    employed or conditionally employed.
//!
//! The four deciders:
//!
//! * [`is_ek_ideal_definition`] evaluates those clauses literally over the
//!   critical-threshold grid;
//! * [`is_ek_ideal_closed_form`] checks the equivalent closed-form
//!   inequalities `f(x∗y) ≤ max{f(y), β}` and
//!   `f((x∗(y∗z))∗z) ≤ max{f(x), f(y), β}`;
//! * [`is_ek_ideal_transitive_form`] checks, on transitive algebras, the
//!   equivalent pair `f(1) ≤ max{f(x), β}` and
//!   `f(x∗z) ≤ max{f(x∗(y∗z)), f(y), β}`;
//! * [`is_ek_ideal_levels`] checks, on transitive algebras, that every
//!   level set `[f]_t` is empty or an ideal.
//!
//! They must agree everywhere; the verification campaign enforces exactly
//! that over an enumerated universe and emits any disagreement as a
//! counterexample.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::BEAlgebra;
use crate::grid::{critical_thresholds, critical_thresholds_with};
use crate::ideal::{is_ideal_def, IdealViolation};
use crate::nfun::{check_k, is_n_ideal, level_set, q_set, DomainError, NFunction, NIdealWitness};
use crate::rat::Rat;
use crate::subset::Subset;
use crate::verdict::Verdict;

/// Validated parameter `k ∈ (-1, 0]` with its boundary `β = (-k-1)/2`
/// cached. `β` always lies in `[-1/2, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EkParams {
    k: Rat,
    beta: Rat,
}

impl EkParams {
    pub fn new(k: Rat) -> Result<Self, DomainError> {
        check_k(&k)?;
        let beta = &(&-&k - &Rat::one()) / &Rat::from_int(2);
        Ok(EkParams { k, beta })
    }

    pub fn k(&self) -> &Rat {
        &self.k
    }

    pub fn beta(&self) -> &Rat {
        &self.beta
    }
}

/// Failure modes of the theorem-level checks, kept apart from `false`
/// verdicts: a checker must distinguish "hypothesis unmet" from
/// "conclusion violated".
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EkError {
    #[error("algebra is not transitive (witness {0:?}); this decider requires transitivity")]
    NotTransitive([usize; 3]),
    #[error("k = {k} is outside the stated range ({lo}, 0] for this theorem")]
    KOutsideTheoremRange { k: Rat, lo: Rat },
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Which decider produced a verdict. Serialized tags are the wire names
/// used by the command-line interface and report files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EkMethod {
    #[serde(rename = "definition")]
    Definition,
    #[serde(rename = "th4")]
    ClosedForm,
    #[serde(rename = "th6")]
    TransitiveForm,
    #[serde(rename = "levels")]
    LevelSets,
}

impl std::fmt::Display for EkMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EkMethod::Definition => "definition",
            EkMethod::ClosedForm => "th4",
            EkMethod::TransitiveForm => "th6",
            EkMethod::LevelSets => "levels",
        };
        write!(f, "{s}")
    }
}

/// Evidence for a `false` verdict. Every variant re-evaluates against the
/// structure it came from; see [`EkWitness::violates`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum EkWitness {
    /// Definition clause (1) fails at threshold `t`: `y/t` employed but
    /// `(x∗y)/t` neither employed nor conditionally employed.
    DefinitionClause1 { x: usize, y: usize, t: Rat },
    /// Definition clause (2) fails at effective threshold `t = max{t,r}`:
    /// `x/t`, `y/t` employed but `((x∗(y∗z))∗z)/t` satisfies neither
    /// disjunct.
    DefinitionClause2 {
        x: usize,
        y: usize,
        z: usize,
        t: Rat,
    },
    /// `f(x∗y) > max{f(y), β}`.
    PairBound { x: usize, y: usize },
    /// `f((x∗(y∗z))∗z) > max{f(x), f(y), β}`.
    TripleBound { x: usize, y: usize, z: usize },
    /// `f(1) > max{f(x), β}`.
    UnitBound { x: usize },
    /// `f(x∗z) > max{f(x∗(y∗z)), f(y), β}`.
    TransitBound { x: usize, y: usize, z: usize },
    /// Level set at `t` is nonempty and not an ideal.
    Level { t: Rat, violation: IdealViolation },
}

impl EkWitness {
    /// Re-evaluates the named clause on `(alg, f, params)` and confirms it
    /// is genuinely violated.
    pub fn violates(&self, alg: &BEAlgebra, f: &NFunction, params: &EkParams) -> bool {
        let beta = params.beta();
        let cond = |w: usize, t: &Rat| {
            // employed or conditionally employed at threshold t
            f.value(w) <= t || &(&(f.value(w) + t) + params.k()) + &Rat::one() < Rat::zero()
        };
        match self {
            EkWitness::DefinitionClause1 { x, y, t } => {
                f.value(*y) <= t && !cond(alg.mul(*x, *y), t)
            }
            EkWitness::DefinitionClause2 { x, y, z, t } => {
                let w = alg.mul(alg.mul(*x, alg.mul(*y, *z)), *z);
                f.value(*x) <= t && f.value(*y) <= t && !cond(w, t)
            }
            EkWitness::PairBound { x, y } => {
                let bound = f.value(*y).clone().max(beta.clone());
                f.value(alg.mul(*x, *y)) > &bound
            }
            EkWitness::TripleBound { x, y, z } => {
                let w = alg.mul(alg.mul(*x, alg.mul(*y, *z)), *z);
                let bound = f
                    .value(*x)
                    .clone()
                    .max(f.value(*y).clone())
                    .max(beta.clone());
                f.value(w) > &bound
            }
            EkWitness::UnitBound { x } => {
                let bound = f.value(*x).clone().max(beta.clone());
                f.value(alg.unit()) > &bound
            }
            EkWitness::TransitBound { x, y, z } => {
                let bound = f
                    .value(alg.mul(*x, alg.mul(*y, *z)))
                    .clone()
                    .max(f.value(*y).clone())
                    .max(beta.clone());
                f.value(alg.mul(*x, *z)) > &bound
            }
            EkWitness::Level { t, violation } => match level_set(f, t, params.k()) {
                Ok(l) => !l.is_empty() && violation.violates(alg, &l),
                Err(_) => false,
            },
        }
    }

    /// Renders the witness with element labels.
    pub fn describe(&self, alg: &BEAlgebra) -> String {
        let l = |i: usize| alg.label(i).to_string();
        match self {
            EkWitness::DefinitionClause1 { x, y, t } => format!(
                "clause (1) at t = {t}: {}/{t} is employed but ({} ∗ {})/{t} satisfies neither disjunct",
                l(*y),
                l(*x),
                l(*y)
            ),
            EkWitness::DefinitionClause2 { x, y, z, t } => format!(
                "clause (2) at max threshold {t}: {}/{t} and {}/{t} are employed but (({} ∗ ({} ∗ {})) ∗ {})/{t} satisfies neither disjunct",
                l(*x),
                l(*y),
                l(*x),
                l(*y),
                l(*z),
                l(*z)
            ),
            EkWitness::PairBound { x, y } => format!(
                "pair bound: f({} ∗ {}) > max{{f({}), β}}",
                l(*x),
                l(*y),
                l(*y)
            ),
            EkWitness::TripleBound { x, y, z } => format!(
                "triple bound: f(({} ∗ ({} ∗ {})) ∗ {}) > max{{f({}), f({}), β}}",
                l(*x),
                l(*y),
                l(*z),
                l(*z),
                l(*x),
                l(*y)
            ),
            EkWitness::UnitBound { x } => {
                format!("unit bound: f(1) > max{{f({}), β}}", l(*x))
            }
            EkWitness::TransitBound { x, y, z } => format!(
                "transit bound: f({} ∗ {}) > max{{f({} ∗ ({} ∗ {})), f({}), β}}",
                l(*x),
                l(*z),
                l(*x),
                l(*y),
                l(*z),
                l(*y)
            ),
            EkWitness::Level { t, violation } => format!(
                "level set at t = {t} is not an ideal: {}",
                violation.describe(alg)
            ),
        }
    }
}

/// A decision with the method that produced it and, on failure, a
/// re-evaluatable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EkVerdict {
    pub holds: bool,
    pub method: EkMethod,
    pub witness: Option<EkWitness>,
}

impl EkVerdict {
    fn pass(method: EkMethod) -> Self {
        EkVerdict {
            holds: true,
            method,
            witness: None,
        }
    }

    fn fail(method: EkMethod, witness: EkWitness) -> Self {
        EkVerdict {
            holds: false,
            method,
            witness: Some(witness),
        }
    }
}

fn employed_or_conditional_idx(f: &NFunction, w: usize, t: &Rat, params: &EkParams) -> bool {
    f.value(w) <= t || &(&(f.value(w) + t) + params.k()) + &Rat::one() < Rat::zero()
}

/// Decides the ideal property from its definition, sweeping the k-aware
/// critical-threshold grid restricted to `[-1, 0)`.
///
/// Clause (2) quantifies two thresholds `t, r`, but its hypothesis only
/// constrains `max{t,r}`: the clause over all `(t, r)` is equivalent to
/// the single-threshold clause at `s = max{t,r}` with `f(x) ≤ s` and
/// `f(y) ≤ s`. One grid sweep therefore decides both quantifiers.
///
/// Scan order: thresholds ascending; at each threshold clause (1) over
/// `(x, y)` lexicographic, then clause (2) over `(x, y, z)` lexicographic.
/// The first violation is the witness.
pub fn is_ek_ideal_definition(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
) -> Result<EkVerdict, DomainError> {
    f.check_matches(alg)?;
    let grid = critical_thresholds(f, Some(params.k()))?;
    Ok(definition_sweep(alg, f, params, &grid.point_thresholds()))
}

/// The definition decider restricted to thresholds `t, r ∈ [lo, hi)`. Used
/// to probe worked examples that quantify over a sub-window of `[-1, 0)`;
/// the full-domain decider is the normative one.
pub fn is_ek_ideal_definition_within(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
    lo: &Rat,
    hi: &Rat,
) -> Result<EkVerdict, DomainError> {
    f.check_matches(alg)?;
    let grid = critical_thresholds_with(f, Some(params.k()), &[lo.clone(), hi.clone()])?;
    let points: Vec<Rat> = grid
        .sweep_points_in(lo, hi)
        .into_iter()
        .filter(|t| *t >= Rat::neg_one() && *t < Rat::zero())
        .collect();
    Ok(definition_sweep(alg, f, params, &points))
}

fn definition_sweep(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
    thresholds: &[Rat],
) -> EkVerdict {
    let n = alg.size();
    for t in thresholds {
        for x in 0..n {
            for y in 0..n {
                if f.value(y) <= t && !employed_or_conditional_idx(f, alg.mul(x, y), t, params) {
                    return EkVerdict::fail(
                        EkMethod::Definition,
                        EkWitness::DefinitionClause1 { x, y, t: t.clone() },
                    );
                }
            }
        }
        for x in 0..n {
            if f.value(x) > t {
                continue;
            }
            for y in 0..n {
                if f.value(y) > t {
                    continue;
                }
                for z in 0..n {
                    let w = alg.mul(alg.mul(x, alg.mul(y, z)), z);
                    if !employed_or_conditional_idx(f, w, t, params) {
                        return EkVerdict::fail(
                            EkMethod::Definition,
                            EkWitness::DefinitionClause2 {
                                x,
                                y,
                                z,
                                t: t.clone(),
                            },
                        );
                    }
                }
            }
        }
    }
    EkVerdict::pass(EkMethod::Definition)
}

/// Decides the ideal property through the closed-form inequalities
/// `f(x∗y) ≤ max{f(y), β}` (all pairs, scanned first) and
/// `f((x∗(y∗z))∗z) ≤ max{f(x), f(y), β}` (all triples).
pub fn is_ek_ideal_closed_form(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
) -> Result<EkVerdict, DomainError> {
    f.check_matches(alg)?;
    let n = alg.size();
    let beta = params.beta();
    for x in 0..n {
        for y in 0..n {
            let bound = f.value(y).clone().max(beta.clone());
            if f.value(alg.mul(x, y)) > &bound {
                return Ok(EkVerdict::fail(
                    EkMethod::ClosedForm,
                    EkWitness::PairBound { x, y },
                ));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy_bound = f.value(x).clone().max(f.value(y).clone()).max(beta.clone());
            for z in 0..n {
                let w = alg.mul(alg.mul(x, alg.mul(y, z)), z);
                if f.value(w) > &xy_bound {
                    return Ok(EkVerdict::fail(
                        EkMethod::ClosedForm,
                        EkWitness::TripleBound { x, y, z },
                    ));
                }
            }
        }
    }
    Ok(EkVerdict::pass(EkMethod::ClosedForm))
}

fn require_transitive(alg: &BEAlgebra) -> Result<(), EkError> {
    let v = alg.is_transitive();
    if v.holds {
        Ok(())
    } else {
        Err(EkError::NotTransitive(v.witness.expect("failed verdict")))
    }
}

/// Decides the ideal property on a transitive algebra through
/// `f(1) ≤ max{f(x), β}` (scanned first) and
/// `f(x∗z) ≤ max{f(x∗(y∗z)), f(y), β}`.
///
/// Non-transitive input is a precondition error, not a `false` verdict:
/// the equivalence this decider relies on assumes transitivity.
pub fn is_ek_ideal_transitive_form(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
) -> Result<EkVerdict, EkError> {
    f.check_matches(alg)?;
    require_transitive(alg)?;
    let n = alg.size();
    let beta = params.beta();
    let unit = f.value(alg.unit());
    for x in 0..n {
        let bound = f.value(x).clone().max(beta.clone());
        if unit > &bound {
            return Ok(EkVerdict::fail(
                EkMethod::TransitiveForm,
                EkWitness::UnitBound { x },
            ));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let bound = f
                    .value(alg.mul(x, alg.mul(y, z)))
                    .clone()
                    .max(f.value(y).clone())
                    .max(beta.clone());
                if f.value(alg.mul(x, z)) > &bound {
                    return Ok(EkVerdict::fail(
                        EkMethod::TransitiveForm,
                        EkWitness::TransitBound { x, y, z },
                    ));
                }
            }
        }
    }
    Ok(EkVerdict::pass(EkMethod::TransitiveForm))
}

/// Decides the ideal property on a transitive algebra by sweeping level
/// sets: `[f]_t` must be empty or an ideal for every `t` on the k-aware
/// grid in `[-1, 0)`.
pub fn is_ek_ideal_levels(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
) -> Result<EkVerdict, EkError> {
    f.check_matches(alg)?;
    require_transitive(alg)?;
    let grid = critical_thresholds(f, Some(params.k()))?;
    for t in grid.point_thresholds() {
        let l = level_set(f, &t, params.k())?;
        if l.is_empty() {
            continue;
        }
        let verdict = is_ideal_def(alg, &l).expect("nonempty, matching size");
        if !verdict.holds {
            return Ok(EkVerdict::fail(
                EkMethod::LevelSets,
                EkWitness::Level {
                    t,
                    violation: verdict.witness.expect("failed verdict"),
                },
            ));
        }
    }
    Ok(EkVerdict::pass(EkMethod::LevelSets))
}

/// Consequence bounds that every conditional-point ideal must satisfy:
/// the unit bound `f(1) ≤ max{f(x), β}`, the double-product bound
/// `f((x∗y)∗y) ≤ max{f(x), β}`, and the order bound
/// `x ≤ y ⇒ f(y) ≤ max{f(x), β}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedBoundsReport {
    /// Witness `x` on failure.
    pub unit_bound: Verdict<usize>,
    /// Witness `(x, y)` on failure.
    pub double_product_bound: Verdict<[usize; 2]>,
    /// Witness `(x, y)` with `x ≤ y` on failure.
    pub order_bound: Verdict<[usize; 2]>,
}

impl DerivedBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.unit_bound.holds && self.double_product_bound.holds && self.order_bound.holds
    }
}

/// Checks the three consequence bounds. Pure check: intended for functions
/// already accepted by a decider, and usable as a negative control on
/// rejected ones.
pub fn check_derived_bounds(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
) -> Result<DerivedBoundsReport, DomainError> {
    f.check_matches(alg)?;
    let n = alg.size();
    let beta = params.beta();
    let unit = f.value(alg.unit());

    let mut unit_bound = Verdict::pass();
    for x in 0..n {
        if unit > &f.value(x).clone().max(beta.clone()) {
            unit_bound = Verdict::fail(x);
            break;
        }
    }

    let mut double_product_bound = Verdict::pass();
    'dp: for x in 0..n {
        let bound = f.value(x).clone().max(beta.clone());
        for y in 0..n {
            if f.value(alg.mul(alg.mul(x, y), y)) > &bound {
                double_product_bound = Verdict::fail([x, y]);
                break 'dp;
            }
        }
    }

    let mut order_bound = Verdict::pass();
    'ob: for x in 0..n {
        let bound = f.value(x).clone().max(beta.clone());
        for y in 0..n {
            if alg.leq(x, y) && f.value(y) > &bound {
                order_bound = Verdict::fail([x, y]);
                break 'ob;
            }
        }
    }

    Ok(DerivedBoundsReport {
        unit_bound,
        double_product_bound,
        order_bound,
    })
}

/// Outcome of the antitone-implication check: if `f` satisfies the unit
/// bound and the transit bound (the two transitive-form inequalities),
/// then `x ≤ y ⇒ f(y) ≤ max{f(x), β}` must follow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    /// Whether both hypothesis inequalities hold.
    pub hypotheses_met: bool,
    /// The hypothesis clause that failed, when one did.
    pub hypothesis_witness: Option<EkWitness>,
    /// The conclusion verdict; present exactly when hypotheses are met.
    pub conclusion: Option<Verdict<[usize; 2]>>,
}

impl ImplicationReport {
    /// True when the implication is not refuted: hypotheses unmet (vacuous)
    /// or conclusion holds.
    pub fn holds_or_vacuous(&self) -> bool {
        match &self.conclusion {
            None => true,
            Some(v) => v.holds,
        }
    }

    pub fn is_vacuous(&self) -> bool {
        !self.hypotheses_met
    }
}

/// Checks the antitone implication. No transitivity or decider
/// precondition: the implication's hypotheses are checked directly.
pub fn check_antitone_implication(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
) -> Result<ImplicationReport, DomainError> {
    f.check_matches(alg)?;
    let n = alg.size();
    let beta = params.beta();
    let unit = f.value(alg.unit());

    for x in 0..n {
        if unit > &f.value(x).clone().max(beta.clone()) {
            return Ok(ImplicationReport {
                hypotheses_met: false,
                hypothesis_witness: Some(EkWitness::UnitBound { x }),
                conclusion: None,
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let bound = f
                    .value(alg.mul(x, alg.mul(y, z)))
                    .clone()
                    .max(f.value(y).clone())
                    .max(beta.clone());
                if f.value(alg.mul(x, z)) > &bound {
                    return Ok(ImplicationReport {
                        hypotheses_met: false,
                        hypothesis_witness: Some(EkWitness::TransitBound { x, y, z }),
                        conclusion: None,
                    });
                }
            }
        }
    }

    let mut conclusion = Verdict::pass();
    'c: for x in 0..n {
        let bound = f.value(x).clone().max(beta.clone());
        for y in 0..n {
            if alg.leq(x, y) && f.value(y) > &bound {
                conclusion = Verdict::fail([x, y]);
                break 'c;
            }
        }
    }
    Ok(ImplicationReport {
        hypotheses_met: true,
        hypothesis_witness: None,
        conclusion: Some(conclusion),
    })
}

/// Outcome of the promotion check: on a transitive algebra, an ideal (by
/// the closed form) whose unit value exceeds `β` must be an N-ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PromotionReport {
    /// Whether the closed-form decider accepts `f`.
    pub ek_ideal: bool,
    /// Whether `f(1) > β` (strict).
    pub unit_above_beta: bool,
    /// The N-ideal verdict; present exactly when both hypotheses hold.
    pub conclusion: Option<Verdict<NIdealWitness>>,
}

impl PromotionReport {
    pub fn hypotheses_met(&self) -> bool {
        self.ek_ideal && self.unit_above_beta
    }

    pub fn holds_or_vacuous(&self) -> bool {
        match &self.conclusion {
            None => true,
            Some(v) => v.holds,
        }
    }
}

/// Checks N-ideal promotion. Requires a transitive algebra (the theorem's
/// standing hypothesis); non-transitive input is an error.
pub fn check_n_ideal_promotion(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
) -> Result<PromotionReport, EkError> {
    f.check_matches(alg)?;
    require_transitive(alg)?;
    let ek_ideal = is_ek_ideal_closed_form(alg, f, params)?.holds;
    let unit_above_beta = f.value(alg.unit()) > params.beta();
    let conclusion = if ek_ideal && unit_above_beta {
        Some(is_n_ideal(alg, f)?)
    } else {
        None
    };
    Ok(PromotionReport {
        ek_ideal,
        unit_above_beta,
        conclusion,
    })
}

/// One entry of the q-set sweep: the threshold, the set, and its ideal
/// verdict (`None` when the set is empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSetEntry {
    pub t: Rat,
    pub set: Subset,
    pub ideal: Option<Verdict<IdealViolation>>,
}

/// Outcome of the q-set sweep over `t ∈ [-1, β)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSetsReport {
    /// Whether the closed-form decider accepts `f` (the theorem's
    /// hypothesis).
    pub ek_ideal: bool,
    /// False when run in exploratory mode outside the stated k-range;
    /// such results are recorded but assert nothing.
    pub normative: bool,
    /// Sweep entries; present exactly when `ek_ideal`.
    pub entries: Option<Vec<QSetEntry>>,
}

impl QSetsReport {
    /// True when no nonempty q-set failed its ideal check (vacuously true
    /// when the hypothesis is unmet).
    pub fn holds_or_vacuous(&self) -> bool {
        match &self.entries {
            None => true,
            Some(entries) => entries
                .iter()
                .all(|e| e.ideal.as_ref().map_or(true, |v| v.holds)),
        }
    }

    pub fn first_violation(&self) -> Option<&QSetEntry> {
        self.entries
            .as_ref()?
            .iter()
            .find(|e| e.ideal.as_ref().is_some_and(|v| !v.holds))
    }
}

/// Checks that every `Q(f; t)` for `t ∈ [-1, β)` is empty or an ideal,
/// given that `f` is an ideal by the closed form.
///
/// The theorem states this for `k ∈ (-1/2, 0]` only. Outside that range
/// the check errs unless `exploratory` is set, in which case it runs
/// anyway and the report is marked non-normative. The sweep uses the
/// k-aware grid: q-set membership `f(x) + t + k + 1 < 0` changes only
/// where `t` crosses a reflected image value, and those are breakpoints.
pub fn check_q_sets(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
    exploratory: bool,
) -> Result<QSetsReport, EkError> {
    f.check_matches(alg)?;
    require_transitive(alg)?;
    let stated_lo = Rat::new(-1, 2);
    let normative = params.k() > &stated_lo;
    if !normative && !exploratory {
        return Err(EkError::KOutsideTheoremRange {
            k: params.k().clone(),
            lo: stated_lo,
        });
    }
    let ek_ideal = is_ek_ideal_closed_form(alg, f, params)?.holds;
    let entries = if ek_ideal {
        let grid = critical_thresholds(f, Some(params.k()))?;
        let mut out = Vec::new();
        for t in grid.sweep_points_in(&Rat::neg_one(), params.beta()) {
            let set = q_set(f, &t, params.k())?;
            let ideal = if set.is_empty() {
                None
            } else {
                Some(is_ideal_def(alg, &set).expect("nonempty, matching size"))
            };
            out.push(QSetEntry { t, set, ideal });
        }
        Some(out)
    } else {
        None
    };
    Ok(QSetsReport {
        ek_ideal,
        normative,
        entries,
    })
}

/// Threshold sweep helper shared by the boundary-flip probe: evaluates the
/// definition clauses at a single threshold.
pub fn definition_holds_at(alg: &BEAlgebra, f: &NFunction, params: &EkParams, t: &Rat) -> bool {
    definition_sweep(alg, f, params, std::slice::from_ref(t)).holds
}

/// Compares cut/level behavior on either side of every breakpoint: returns
/// the breakpoints where the single-threshold definition verdict differs
/// between the breakpoint itself and the adjacent midpoints. A flip at a
/// breakpoint is legitimate piecewise behavior; the campaign records flips
/// as findings because boundary handling is where strict/non-strict
/// comparisons earn their keep.
pub fn boundary_flips(
    alg: &BEAlgebra,
    f: &NFunction,
    params: &EkParams,
) -> Result<Vec<Rat>, DomainError> {
    f.check_matches(alg)?;
    let grid = critical_thresholds(f, Some(params.k()))?;
    let bps = grid.breakpoints();
    let mids = grid.midpoints();
    let mut flips = Vec::new();
    for (i, b) in bps.iter().enumerate() {
        if b.value >= Rat::zero() || b.value < Rat::neg_one() {
            continue;
        }
        let at = definition_holds_at(alg, f, params, &b.value);
        let differs_left = i > 0 && definition_holds_at(alg, f, params, &mids[i - 1]) != at;
        let differs_right = i < mids.len()
            && mids[i] < Rat::zero()
            && definition_holds_at(alg, f, params, &mids[i]) != at;
        if differs_left || differs_right {
            flips.push(b.value.clone());
        }
    }
    Ok(flips)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(s: &str) -> Rat {
        Rat::parse(s).unwrap()
    }

    fn p(k: &str) -> EkParams {
        EkParams::new(r(k)).unwrap()
    }

    fn bad2() -> NFunction {
        NFunction::new(vec![r("-0.1"), r("-0.9")]).unwrap()
    }

    fn good2() -> NFunction {
        NFunction::new(vec![r("-0.4"), r("-0.3")]).unwrap()
    }

    #[test]
    fn params_cache_beta() {
        assert_eq!(p("0").beta(), &r("-1/2"));
        assert_eq!(p("-1/2").beta(), &r("-1/4"));
        assert_eq!(p("-0.9").beta(), &r("-1/20"));
        assert!(EkParams::new(r("-1")).is_err());
        assert!(EkParams::new(r("0.1")).is_err());
    }

    #[test]
    fn all_methods_accept_the_worked_structure() {
        let g = fixtures::gamma5();
        let f = fixtures::gamma5_nfun();
        let params = p("-1/2");
        assert!(is_ek_ideal_definition(&g, &f, &params).unwrap().holds);
        assert!(is_ek_ideal_closed_form(&g, &f, &params).unwrap().holds);
        assert!(is_ek_ideal_transitive_form(&g, &f, &params).unwrap().holds);
        assert!(is_ek_ideal_levels(&g, &f, &params).unwrap().holds);
    }

    #[test]
    fn all_methods_reject_with_reevaluatable_witnesses() {
        let b = fixtures::two_element();
        let f = bad2();
        let params = p("0");

        let d = is_ek_ideal_definition(&b, &f, &params).unwrap();
        assert!(!d.holds);
        // First grid threshold with a violation is t = -9/10, where a/t is
        // employed but (a ∗ a)/t = 1/t satisfies neither disjunct.
        assert_eq!(
            d.witness,
            Some(EkWitness::DefinitionClause1 {
                x: 1,
                y: 1,
                t: r("-9/10")
            })
        );
        assert!(d.witness.unwrap().violates(&b, &f, &params));

        let c = is_ek_ideal_closed_form(&b, &f, &params).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness, Some(EkWitness::PairBound { x: 1, y: 1 }));
        assert!(c.witness.unwrap().violates(&b, &f, &params));

        let t6 = is_ek_ideal_transitive_form(&b, &f, &params).unwrap();
        assert!(!t6.holds);
        assert_eq!(t6.witness, Some(EkWitness::UnitBound { x: 1 }));
        assert!(t6.witness.unwrap().violates(&b, &f, &params));

        let lv = is_ek_ideal_levels(&b, &f, &params).unwrap();
        assert!(!lv.holds);
        let w = lv.witness.unwrap();
        assert!(matches!(w, EkWitness::Level { .. }));
        assert!(w.violates(&b, &f, &params));
        if let EkWitness::Level { t, .. } = w {
            assert_eq!(t, r("-7/10"));
        }
    }

    #[test]
    fn all_methods_accept_the_good_two_element_function() {
        let b = fixtures::two_element();
        let f = good2();
        let params = p("0");
        assert!(is_ek_ideal_definition(&b, &f, &params).unwrap().holds);
        assert!(is_ek_ideal_closed_form(&b, &f, &params).unwrap().holds);
        assert!(is_ek_ideal_transitive_form(&b, &f, &params).unwrap().holds);
        assert!(is_ek_ideal_levels(&b, &f, &params).unwrap().holds);
    }

    #[test]
    fn constant_negative_one_is_always_accepted() {
        let a = fixtures::alpha5();
        let f = NFunction::constant(5, r("-1")).unwrap();
        for k in ["0", "-1/4", "-1/2", "-0.99"] {
            assert!(is_ek_ideal_definition(&a, &f, &p(k)).unwrap().holds);
            assert!(is_ek_ideal_closed_form(&a, &f, &p(k)).unwrap().holds);
        }
    }

    #[test]
    fn non_transitive_is_a_precondition_error_not_false() {
        // All axioms hold but transitivity fails: found by enumeration at
        // size 4. Witness: 1 ∗ 2 = 1 is not below (3 ∗ 1) ∗ (3 ∗ 2) = a.
        let alg = crate::algebra::BEAlgebra::from_table(
            4,
            vec![0, 1, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
        )
        .unwrap();
        let tv = alg.is_transitive();
        assert!(!tv.holds);
        assert_eq!(tv.witness, Some([3, 1, 2]));
        let f = NFunction::constant(4, r("-1/2")).unwrap();
        let params = p("0");
        assert!(matches!(
            is_ek_ideal_transitive_form(&alg, &f, &params),
            Err(EkError::NotTransitive(_))
        ));
        assert!(matches!(
            is_ek_ideal_levels(&alg, &f, &params),
            Err(EkError::NotTransitive(_))
        ));
        // The definition and closed form do not require transitivity.
        assert!(is_ek_ideal_definition(&alg, &f, &params).is_ok());
        assert!(is_ek_ideal_closed_form(&alg, &f, &params).is_ok());
    }

    #[test]
    fn derived_bounds_reports() {
        let g = fixtures::gamma5();
        let gf = fixtures::gamma5_nfun();
        assert!(check_derived_bounds(&g, &gf, &p("-1/2"))
            .unwrap()
            .all_hold());

        let a = fixtures::alpha5();
        let ones = NFunction::constant(5, r("-1")).unwrap();
        assert!(check_derived_bounds(&a, &ones, &p("0")).unwrap().all_hold());

        // Negative control: the rejected two-element function fails the
        // unit bound, since f(1) = -1/10 > max{f(a), -1/2} = -1/2.
        let b = fixtures::two_element();
        let report = check_derived_bounds(&b, &bad2(), &p("0")).unwrap();
        assert!(!report.all_hold());
        assert_eq!(report.unit_bound.witness, Some(1));
    }

    #[test]
    fn antitone_implication_reports() {
        let g = fixtures::gamma5();
        let report = check_antitone_implication(&g, &fixtures::gamma5_nfun(), &p("-1/2")).unwrap();
        assert!(report.hypotheses_met);
        assert!(report.conclusion.unwrap().holds);

        let z3 = NFunction::constant(2, r("0")).unwrap();
        let b = fixtures::two_element();
        let report = check_antitone_implication(&b, &z3, &p("0")).unwrap();
        assert!(report.hypotheses_met);
        assert!(report.conclusion.unwrap().holds);

        let report = check_antitone_implication(&b, &bad2(), &p("0")).unwrap();
        assert!(!report.hypotheses_met);
        assert!(report.is_vacuous());
        assert!(report.holds_or_vacuous());
        assert_eq!(
            report.hypothesis_witness,
            Some(EkWitness::UnitBound { x: 1 })
        );
    }

    #[test]
    fn promotion_reports() {
        let b = fixtures::two_element();
        let report = check_n_ideal_promotion(&b, &good2(), &p("0")).unwrap();
        assert!(report.hypotheses_met()); // -2/5 > -1/2 and ek-ideal
        assert!(report.conclusion.unwrap().holds);

        // Hypothesis f(1) > β fails: f(1) = -9/10 ≤ -1/4.
        let g = fixtures::gamma5();
        let report = check_n_ideal_promotion(&g, &fixtures::gamma5_nfun(), &p("-1/2")).unwrap();
        assert!(report.ek_ideal);
        assert!(!report.unit_above_beta);
        assert!(report.conclusion.is_none());
        assert!(report.holds_or_vacuous());

        // Constant zero: hypotheses hold, conclusion holds.
        let z = NFunction::constant(2, r("0")).unwrap();
        let report = check_n_ideal_promotion(&b, &z, &p("0")).unwrap();
        assert!(report.hypotheses_met());
        assert!(report.conclusion.unwrap().holds);
    }

    #[test]
    fn q_sweeps() {
        let g = fixtures::gamma5();
        let report = check_q_sets(&g, &fixtures::gamma5_nfun(), &p("-0.2"), false).unwrap();
        assert!(report.ek_ideal);
        assert!(report.normative);
        assert!(report.holds_or_vacuous());
        // Every nonempty q-set in the sweep is an ideal; t = -1/2 gives X.
        let entries = report.entries.as_ref().unwrap();
        assert!(entries.iter().any(|e| e.set.is_full()));

        let b = fixtures::two_element();
        let report = check_q_sets(&b, &good2(), &p("0"), false).unwrap();
        assert!(report.holds_or_vacuous());
        for e in report.entries.unwrap() {
            assert!(e.set.is_empty() || e.set.mask() == 0b01 || e.set.is_full());
        }

        // k outside (-1/2, 0]: error unless exploratory.
        assert!(matches!(
            check_q_sets(&g, &fixtures::gamma5_nfun(), &p("-0.6"), false),
            Err(EkError::KOutsideTheoremRange { .. })
        ));
        let report = check_q_sets(&g, &fixtures::gamma5_nfun(), &p("-0.6"), true).unwrap();
        assert!(!report.normative);
        assert!(report.holds_or_vacuous());
    }

    #[test]
    fn restricted_window_agrees_with_full_domain_here() {
        // The worked example quantifies t, r over [-0.7, -0.3); the full
        // domain gives the same verdict on this structure.
        let g = fixtures::gamma5();
        let f = fixtures::gamma5_nfun();
        let params = p("-1/2");
        let windowed =
            is_ek_ideal_definition_within(&g, &f, &params, &r("-0.7"), &r("-0.3")).unwrap();
        let full = is_ek_ideal_definition(&g, &f, &params).unwrap();
        assert!(windowed.holds);
        assert!(full.holds);

        // A failing structure can pass on a window that avoids its
        // violating thresholds: this rejected two-element function fails
        // exactly on [-9/10, -1/10), so windows on either side accept it
        // while any window meeting that band still rejects.
        let b = fixtures::two_element();
        let params = p("0");
        assert!(!is_ek_ideal_definition(&b, &bad2(), &params).unwrap().holds);
        let below =
            is_ek_ideal_definition_within(&b, &bad2(), &params, &r("-1"), &r("-0.95")).unwrap();
        assert!(below.holds);
        let above =
            is_ek_ideal_definition_within(&b, &bad2(), &params, &r("-0.1"), &r("0")).unwrap();
        assert!(above.holds);
        let inside =
            is_ek_ideal_definition_within(&b, &bad2(), &params, &r("-0.7"), &r("-0.3")).unwrap();
        assert!(!inside.holds);
    }

    #[test]
    fn k_monotonicity_on_fixtures() {
        // Acceptance at k implies acceptance at every smaller k in (-1, k].
        let b = fixtures::two_element();
        let f = good2();
        let ks = ["-0.9", "-0.75", "-0.5", "-0.25", "0"];
        let verdicts: Vec<bool> = ks
            .iter()
            .map(|k| is_ek_ideal_closed_form(&b, &f, &p(k)).unwrap().holds)
            .collect();
        for i in 0..verdicts.len() {
            for j in 0..i {
                if verdicts[i] {
                    assert!(verdicts[j], "verdict at {} not implied by {}", ks[j], ks[i]);
                }
            }
        }
    }

    #[test]
    fn boundary_flip_probe_runs() {
        let b = fixtures::two_element();
        let flips = boundary_flips(&b, &bad2(), &p("0")).unwrap();
        // The rejected function holds vacuously below t = -9/10 (nothing is
        // employed), fails on [-9/10, -1/10) once f(a) ≤ t bites, and holds
        // again from -1/10 (= f(1), also the reflection -1-k-f(a)) upward:
        // a verdict change lands exactly on each of the two breakpoints.
        assert_eq!(flips, vec![r("-9/10"), r("-1/10")]);

        let flips = boundary_flips(&b, &good2(), &p("0")).unwrap();
        assert!(flips.is_empty());
    }
}
