//! Reduction of continuous threshold quantifiers to finite grids.
//!
//! Every quantified predicate over `t ∈ [-1, 0]` in this crate is a boolean
//! combination of comparisons between `t` and finitely many constants: the
//! function's image values `v`, their reflections `-1 - k - v`, and the
//! boundary `(-k-1)/2`. Such a predicate is piecewise constant between
//! consecutive members of that constant set, so checking it at every
//! breakpoint and at one interior point of every open interval decides the
//! full quantifier exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::nfun::{check_k, DomainError, NFunction};
use crate::rat::Rat;

/// Where a breakpoint value came from. A single value can have several
/// sources; all are recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BreakpointSource {
    /// Interval endpoint `-1` or `0`.
    #[serde(rename = "endpoint")]
    Endpoint,
    /// A value of the function.
    #[serde(rename = "image")]
    Image,
    /// `-1 - k - v` for an image value `v`, when it lands in `[-1, 0]`.
    #[serde(rename = "reflected")]
    Reflected,
    /// The boundary `(-k-1)/2`.
    #[serde(rename = "beta")]
    Beta,
    /// Supplied by the caller, e.g. a restricted-window endpoint.
    #[serde(rename = "requested")]
    Requested,
}

impl fmt::Display for BreakpointSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BreakpointSource::Endpoint => "endpoint",
            BreakpointSource::Image => "image",
            BreakpointSource::Reflected => "reflected",
            BreakpointSource::Beta => "beta",
            BreakpointSource::Requested => "requested",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Breakpoint {
    pub value: Rat,
    pub sources: Vec<BreakpointSource>,
}

/// Sorted breakpoints in `[-1, 0]` with a midpoint for each open interval
/// between consecutive breakpoints. `-1` and `0` are always present, so
/// the midpoints cover every gap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdGrid {
    breakpoints: Vec<Breakpoint>,
    midpoints: Vec<Rat>,
}

/// Builds the grid for a function, optionally k-aware. With `k` present the
/// breakpoints also include each reflected value `-1 - k - v` that lands in
/// `[-1, 0]` and the boundary `(-k-1)/2`.
pub fn critical_thresholds(f: &NFunction, k: Option<&Rat>) -> Result<ThresholdGrid, DomainError> {
    critical_thresholds_with(f, k, &[])
}

/// [`critical_thresholds`] plus caller-supplied breakpoints (each must lie
/// in `[-1, 0]`), used for restricted threshold windows.
pub fn critical_thresholds_with(
    f: &NFunction,
    k: Option<&Rat>,
    extra: &[Rat],
) -> Result<ThresholdGrid, DomainError> {
    if let Some(k) = k {
        check_k(k)?;
    }
    let mut sources: BTreeMap<Rat, BTreeSet<BreakpointSource>> = BTreeMap::new();
    let mut add = |v: Rat, s: BreakpointSource| {
        sources.entry(v).or_default().insert(s);
    };
    add(Rat::neg_one(), BreakpointSource::Endpoint);
    add(Rat::zero(), BreakpointSource::Endpoint);
    for v in f.image() {
        add(v, BreakpointSource::Image);
    }
    if let Some(k) = k {
        for v in f.image() {
            let reflected = &(&-&Rat::one() - k) - &v;
            if reflected.in_unit_neg_interval() {
                add(reflected, BreakpointSource::Reflected);
            }
        }
        let beta = &(&-k.clone() - &Rat::one()) / &Rat::from_int(2);
        add(beta, BreakpointSource::Beta);
    }
    for v in extra {
        if !v.in_unit_neg_interval() {
            return Err(DomainError::CutThreshold { t: v.clone() });
        }
        add(v.clone(), BreakpointSource::Requested);
    }
    let breakpoints: Vec<Breakpoint> = sources
        .into_iter()
        .map(|(value, srcs)| Breakpoint {
            value,
            sources: srcs.into_iter().collect(),
        })
        .collect();
    let midpoints = breakpoints
        .windows(2)
        .map(|w| Rat::mid(&w[0].value, &w[1].value))
        .collect();
    Ok(ThresholdGrid {
        breakpoints,
        midpoints,
    })
}

impl ThresholdGrid {
    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.breakpoints
    }

    pub fn midpoints(&self) -> &[Rat] {
        &self.midpoints
    }

    /// Breakpoints and midpoints merged ascending: checking a piecewise-
    /// constant predicate at exactly these points decides it on all of
    /// `[-1, 0]`.
    pub fn sweep_points(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.breakpoints.len() + self.midpoints.len());
        for (i, b) in self.breakpoints.iter().enumerate() {
            out.push(b.value.clone());
            if let Some(m) = self.midpoints.get(i) {
                out.push(m.clone());
            }
        }
        out
    }

    /// Sweep points restricted to `lo ≤ t < hi`.
    pub fn sweep_points_in(&self, lo: &Rat, hi: &Rat) -> Vec<Rat> {
        self.sweep_points()
            .into_iter()
            .filter(|t| t >= lo && t < hi)
            .collect()
    }

    /// Sweep points in `[-1, 0)`, the domain of point thresholds.
    pub fn point_thresholds(&self) -> Vec<Rat> {
        self.sweep_points_in(&Rat::neg_one(), &Rat::zero())
    }
}
