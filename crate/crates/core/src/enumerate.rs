//! Exhaustive enumeration of finite BE-algebras, canonical forms for
//! isomorphism reduction, and N-function grids.
//!
//! The axioms fix most of a Cayley table up front: V1 forces the diagonal,
//! V2 the unit column, V3 the unit row. That leaves `(n-1)(n-2)` free
//! cells, filled row-major by depth-first search. The exchange axiom V4 is
//! enforced incrementally: after each cell assignment, exactly the V4
//! instances whose last undetermined lookup is that cell are re-checked,
//! so every branch that survives to a full table is a BE-algebra and every
//! BE-algebra is reached. A debug assertion re-validates each leaf against
//! the full axiom check.
//!
//! Isomorphism reduction: any isomorphism fixes the unit, so relabelings
//! are permutations of `1..n`. The canonical form of a table is the
//! lexicographically least relabeling; enumeration up to isomorphism keeps
//! the tables that equal their own canonical form.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{check_axioms, BEAlgebra};
use crate::nfun::NFunction;
use crate::rat::Rat;

/// Hard cap on enumeration size. The labeled count grows super-
/// exponentially; size 6 is already hundreds of millions of DFS nodes.
pub const MAX_ENUM_SIZE: usize = 6;

/// Cap on materialized N-function grids.
pub const MAX_FUNCTION_GRID: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("size {0} is outside 1..={MAX_ENUM_SIZE}")]
    SizeOutOfRange(usize),
    #[error("step denominator must be at least 1")]
    BadStep,
    #[error("grid of {0} functions exceeds the cap of {MAX_FUNCTION_GRID}")]
    TooManyFunctions(u64),
}

/// What to enumerate: carrier size, optional law filters, and whether to
/// reduce up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub size: usize,
    #[serde(default)]
    pub transitive_only: bool,
    #[serde(default)]
    pub self_distributive_only: bool,
    #[serde(default)]
    pub up_to_iso: bool,
}

impl EnumerationConfig {
    pub fn all_of_size(size: usize) -> Self {
        EnumerationConfig {
            size,
            transitive_only: false,
            self_distributive_only: false,
            up_to_iso: false,
        }
    }
}

struct Dfs<'a, F: FnMut(&BEAlgebra) -> ControlFlow<()>> {
    n: usize,
    table: Vec<usize>,
    free: Vec<(usize, usize)>,
    cfg: &'a EnumerationConfig,
    visit: F,
}

const EMPTY: usize = usize::MAX;

impl<'a, F: FnMut(&BEAlgebra) -> ControlFlow<()>> Dfs<'a, F> {
    fn at(&self, x: usize, y: usize) -> usize {
        self.table[self.n * x + y]
    }

    /// Checks the V4 instance (x, y, z) if both sides are currently
    /// computable; returns false only on a definite violation.
    fn v4_ok(&self, x: usize, y: usize, z: usize) -> bool {
        let yz = self.at(y, z);
        let xz = self.at(x, z);
        if yz == EMPTY || xz == EMPTY {
            return true;
        }
        let lhs = self.at(x, yz);
        let rhs = self.at(y, xz);
        lhs == EMPTY || rhs == EMPTY || lhs == rhs
    }

    /// All V4 instances whose evaluation can involve cell (i, j) as one of
    /// its four lookups. Instances not yet fully determined pass
    /// trivially; the one that just became determined is decided here.
    fn v4_after_assign(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        // (i, j) as the inner lookup y ∗ z.
        for x in 0..n {
            if !self.v4_ok(x, i, j) {
                return false;
            }
        }
        // (i, j) as the inner lookup x ∗ z.
        for y in 0..n {
            if !self.v4_ok(i, y, j) {
                return false;
            }
        }
        // (i, j) as an outer lookup: x ∗ (y ∗ z) with y ∗ z = j, or
        // y ∗ (x ∗ z) with x ∗ z = j.
        for y in 0..n {
            for z in 0..n {
                if self.at(y, z) == j && !self.v4_ok(i, y, z) {
                    return false;
                }
            }
        }
        for x in 0..n {
            for z in 0..n {
                if self.at(x, z) == j && !self.v4_ok(x, i, z) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> ControlFlow<()> {
        if depth == self.free.len() {
            return self.leaf();
        }
        let (i, j) = self.free[depth];
        for v in 0..self.n {
            self.table[self.n * i + j] = v;
            if self.v4_after_assign(i, j) {
                self.run(depth + 1)?;
            }
        }
        self.table[self.n * i + j] = EMPTY;
        ControlFlow::Continue(())
    }

    fn leaf(&mut self) -> ControlFlow<()> {
        debug_assert!(check_axioms(self.n, &self.table).holds());
        if self.cfg.up_to_iso && !table_is_canonical(self.n, &self.table) {
            return ControlFlow::Continue(());
        }
        let alg = BEAlgebra::from_table_unchecked(self.n, self.table.clone());
        if self.cfg.transitive_only && !alg.is_transitive().holds {
            return ControlFlow::Continue(());
        }
        if self.cfg.self_distributive_only && !alg.is_self_distributive().holds {
            return ControlFlow::Continue(());
        }
        (self.visit)(&alg)
    }
}

/// Streams every BE-algebra matching the configuration to `visit`, in a
/// fixed deterministic order (lexicographic by free-cell assignment).
/// `visit` may stop the walk early with `ControlFlow::Break`.
pub fn for_each_algebra(
    cfg: &EnumerationConfig,
    visit: impl FnMut(&BEAlgebra) -> ControlFlow<()>,
) -> Result<(), EnumError> {
    let n = cfg.size;
    if n == 0 || n > MAX_ENUM_SIZE {
        return Err(EnumError::SizeOutOfRange(n));
    }
    let mut table = vec![EMPTY; n * n];
    for x in 0..n {
        table[n * x + x] = 0; // V1
        table[n * x] = 0; // V2
        table[x] = x; // V3
    }
    let free: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (1..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut dfs = Dfs {
        n,
        table,
        free,
        cfg,
        visit,
    };
    // Instances decided by the forced skeleton alone are never revisited
    // by the incremental check, so settle them first.
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !dfs.v4_ok(x, y, z) {
                    return Ok(());
                }
            }
        }
    }
    let _ = dfs.run(0);
    Ok(())
}

/// Collects the enumeration into a vector. Sizes within the cap keep this
/// comfortably in memory for everything but unfiltered size 6.
pub fn enumerate_algebras(cfg: &EnumerationConfig) -> Result<Vec<BEAlgebra>, EnumError> {
    let mut out = Vec::new();
    for_each_algebra(cfg, |alg| {
        out.push(alg.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_algebras(cfg: &EnumerationConfig) -> Result<u64, EnumError> {
    let mut count = 0u64;
    for_each_algebra(cfg, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(k, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn relabeled(n: usize, table: &[usize], perm: &[usize]) -> Vec<usize> {
    // perm maps old index -> new index; perm[0] = 0 always.
    let mut out = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            out[n * perm[x] + perm[y]] = perm[table[n * x + y]];
        }
    }
    out
}

fn unit_fixing_perms(n: usize) -> Vec<Vec<usize>> {
    permutations(n - 1)
        .into_iter()
        .map(|p| {
            let mut full = vec![0usize];
            full.extend(p.into_iter().map(|v| v + 1));
            full
        })
        .collect()
}

/// The lexicographically least relabeling of the table over all
/// permutations fixing the unit.
pub fn canonical_table(alg: &BEAlgebra) -> Vec<usize> {
    let n = alg.size();
    let table = alg.table();
    let mut best: Option<Vec<usize>> = None;
    for perm in unit_fixing_perms(n) {
        let candidate = relabeled(n, table, &perm);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.expect("at least the identity permutation")
}

fn table_is_canonical(n: usize, table: &[usize]) -> bool {
    for perm in unit_fixing_perms(n) {
        if relabeled(n, table, &perm).as_slice() < table {
            return false;
        }
    }
    true
}

pub fn is_canonical(alg: &BEAlgebra) -> bool {
    table_is_canonical(alg.size(), alg.table())
}

/// The canonical representative of the algebra's isomorphism class, with
/// default element names.
pub fn canonicalize(alg: &BEAlgebra) -> BEAlgebra {
    BEAlgebra::from_table_unchecked(alg.size(), canonical_table(alg))
}

/// Number of distinct labeled tables in the algebra's isomorphism class.
/// Orbit sizes over canonical representatives partition the labeled count.
pub fn orbit_size(alg: &BEAlgebra) -> u64 {
    let n = alg.size();
    let mut seen = std::collections::BTreeSet::new();
    for perm in unit_fixing_perms(n) {
        seen.insert(relabeled(n, alg.table(), &perm));
    }
    seen.len() as u64
}

/// All N-functions whose values lie on the grid `{0, -1/m, ..., -1}` for
/// step denominator `m`, in lexicographic order: element 0 varies slowest
/// and each coordinate runs from 0 down to -1.
pub fn enumerate_n_functions(n: usize, step_denominator: u32) -> Result<Vec<NFunction>, EnumError> {
    let m = step_denominator as u64;
    if m == 0 {
        return Err(EnumError::BadStep);
    }
    let per = m + 1;
    let total = match per.checked_pow(n as u32) {
        Some(t) if t <= MAX_FUNCTION_GRID => t,
        Some(t) => return Err(EnumError::TooManyFunctions(t)),
        None => return Err(EnumError::TooManyFunctions(u64::MAX)),
    };
    let values: Vec<Rat> = (0..=m).map(|i| Rat::new(-(i as i64), m as i64)).collect();
    let mut out = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; n];
    loop {
        let fvals: Vec<Rat> = idx.iter().map(|&i| values[i].clone()).collect();
        out.push(NFunction::new(fvals).expect("grid values lie in [-1, 0]"));
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if idx[pos] + 1 <= m as usize {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `count` N-functions with grid values drawn from a seeded generator.
/// The draw is sequential, so the result depends only on the arguments.
pub fn sample_n_functions(
    n: usize,
    step_denominator: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<NFunction>, EnumError> {
    let m = step_denominator as i64;
    if m <= 0 {
        return Err(EnumError::BadStep);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let values: Vec<Rat> = (0..n).map(|_| Rat::new(-rng.gen_range(0..=m), m)).collect();
        out.push(NFunction::new(values).expect("grid values lie in [-1, 0]"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labeled_count(n: usize) -> u64 {
        count_algebras(&EnumerationConfig::all_of_size(n)).unwrap()
    }

    fn iso_count(n: usize) -> u64 {
        let cfg = EnumerationConfig {
            up_to_iso: true,
            ..EnumerationConfig::all_of_size(n)
        };
        count_algebras(&cfg).unwrap()
    }

    #[test]
    fn small_counts_are_pinned() {
        assert_eq!(labeled_count(1), 1);
        assert_eq!(labeled_count(2), 1);
        assert_eq!(labeled_count(3), 6);
        assert_eq!(iso_count(1), 1);
        assert_eq!(iso_count(2), 1);
        assert_eq!(iso_count(3), 4);
    }

    #[test]
    fn size_three_tables_match_direct_filter() {
        // Independent oracle: check all 9 fillings of the two free cells
        // against the full axiom check.
        let mut expected = Vec::new();
        for a in 0..3usize {
            for b in 0..3usize {
                let table = vec![0, 1, 2, 0, 0, a, 0, b, 0];
                if check_axioms(3, &table).holds() {
                    expected.push(table);
                }
            }
        }
        let got: Vec<Vec<usize>> = enumerate_algebras(&EnumerationConfig::all_of_size(3))
            .unwrap()
            .iter()
            .map(|alg| alg.table().to_vec())
            .collect();
        assert_eq!(expected.len(), 6);
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut expected_sorted = expected;
        expected_sorted.sort();
        assert_eq!(got_sorted, expected_sorted);
    }

    #[test]
    fn canonical_form_is_idempotent_and_minimal() {
        for alg in enumerate_algebras(&EnumerationConfig::all_of_size(3)).unwrap() {
            let c = canonical_table(&alg);
            let c_alg = BEAlgebra::from_table(3, c.clone()).unwrap();
            assert_eq!(canonical_table(&c_alg), c);
            assert!(c <= alg.table().to_vec());
        }
    }

    #[test]
    fn canonical_orbit_example() {
        // The size-3 algebra with a ∗ b = b, b ∗ a = 1 is isomorphic to
        // the one with a ∗ b = 1, b ∗ a = a; the latter is the canonical
        // representative of their two-element orbit.
        let alg = BEAlgebra::from_table(3, vec![0, 1, 2, 0, 0, 2, 0, 0, 0]).unwrap();
        assert!(!is_canonical(&alg));
        assert_eq!(canonical_table(&alg), vec![0, 1, 2, 0, 0, 0, 0, 1, 0]);
        let canon = canonicalize(&alg);
        assert!(is_canonical(&canon));
    }

    #[test]
    fn size_three_canonical_forms_are_pinned() {
        let cfg = EnumerationConfig {
            up_to_iso: true,
            ..EnumerationConfig::all_of_size(3)
        };
        let tables: Vec<Vec<usize>> = enumerate_algebras(&cfg)
            .unwrap()
            .iter()
            .map(|a| a.table().to_vec())
            .collect();
        assert_eq!(
            tables,
            vec![
                vec![0, 1, 2, 0, 0, 0, 0, 0, 0],
                vec![0, 1, 2, 0, 0, 0, 0, 1, 0],
                vec![0, 1, 2, 0, 0, 0, 0, 2, 0],
                vec![0, 1, 2, 0, 0, 2, 0, 1, 0],
            ]
        );
    }

    #[test]
    fn filters_restrict_the_stream() {
        // At size 3 every algebra is transitive; four of six are
        // self-distributive.
        let trans = EnumerationConfig {
            transitive_only: true,
            ..EnumerationConfig::all_of_size(3)
        };
        assert_eq!(count_algebras(&trans).unwrap(), 6);
        let sd = EnumerationConfig {
            self_distributive_only: true,
            ..EnumerationConfig::all_of_size(3)
        };
        assert_eq!(count_algebras(&sd).unwrap(), 4);
    }

    #[test]
    fn early_stop_is_respected() {
        let mut seen = 0;
        for_each_algebra(&EnumerationConfig::all_of_size(3), |_| {
            seen += 1;
            if seen == 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(seen, 2);
    }

    #[test]
    fn size_bounds_are_enforced() {
        assert!(matches!(
            count_algebras(&EnumerationConfig::all_of_size(0)),
            Err(EnumError::SizeOutOfRange(0))
        ));
        assert!(matches!(
            count_algebras(&EnumerationConfig::all_of_size(7)),
            Err(EnumError::SizeOutOfRange(7))
        ));
    }

    #[test]
    fn function_grids_enumerate_in_lex_order() {
        let fs = enumerate_n_functions(1, 4).unwrap();
        assert_eq!(fs.len(), 5);
        assert_eq!(fs[0].value(0), &Rat::zero());
        assert_eq!(fs[4].value(0), &Rat::neg_one());

        let fs = enumerate_n_functions(2, 2).unwrap();
        assert_eq!(fs.len(), 9);
        // First coordinate varies slowest.
        assert_eq!(fs[0].values(), &[Rat::zero(), Rat::zero()]);
        assert_eq!(fs[1].values(), &[Rat::zero(), Rat::new(-1, 2)]);
        assert_eq!(fs[3].values(), &[Rat::new(-1, 2), Rat::zero()]);

        assert!(matches!(
            enumerate_n_functions(2, 0),
            Err(EnumError::BadStep)
        ));
    }

    #[test]
    fn sampled_functions_are_deterministic() {
        let a = sample_n_functions(4, 10, 20, 99).unwrap();
        let b = sample_n_functions(4, 10, 20, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_n_functions(4, 10, 20, 100).unwrap();
        assert_ne!(a, c);
        for f in &a {
            for v in f.values() {
                assert!(v.in_unit_neg_interval());
            }
        }
    }

    #[test]
    fn orbit_sizes_partition_the_labeled_count() {
        for n in 1..=4 {
            let reps = enumerate_algebras(&EnumerationConfig {
                up_to_iso: true,
                ..EnumerationConfig::all_of_size(n)
            })
            .unwrap();
            let total: u64 = reps.iter().map(orbit_size).sum();
            assert_eq!(total, labeled_count(n), "size {n}");
        }
        // 6 = 1 + 2 + 2 + 1 at size 3.
        let reps = enumerate_algebras(&EnumerationConfig {
            up_to_iso: true,
            ..EnumerationConfig::all_of_size(3)
        })
        .unwrap();
        let orbits: Vec<u64> = reps.iter().map(orbit_size).collect();
        assert_eq!(orbits, vec![1, 2, 2, 1]);
    }
}
