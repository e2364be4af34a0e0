//! Finite BE-algebras: construction, axiom validation, and law checks.
//!
//! A BE-algebra is a set with a binary operation `∗` and a distinguished
//! unit `1` satisfying, for all `x`, `y`, `z`:
//!
//! * V1: `x ∗ x = 1`
//! * V2: `x ∗ 1 = 1`
//! * V3: `1 ∗ x = x`
//! * V4: `x ∗ (y ∗ z) = y ∗ (x ∗ z)` (exchange)
//!
//! The induced relation `x ≤ y ⟺ x ∗ y = 1` is reflexive by V1 but not a
//! partial order in general. Elements are indices `0..n` with the unit
//! always at index 0; construction from labeled input reorders so that the
//! element labeled `"1"` lands at index 0.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::verdict::Verdict;

/// Structural problems with input data, distinct from axiom failures: a
/// malformed table is rejected before any axiom is evaluated.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("an algebra needs at least one element")]
    Empty,
    #[error("element list has duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("no element is labeled \"1\"; the unit must carry that label")]
    MissingUnit,
    #[error("table has {got} rows, expected {expected}")]
    RowCount { expected: usize, got: usize },
    #[error("table row {row} has {got} entries, expected {expected}")]
    RowWidth {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("table entry at row {row}, column {col} is {label:?}, not an element")]
    UnknownEntry {
        row: usize,
        col: usize,
        label: String,
    },
    #[error(
        "table entry at row {row}, column {col} is index {value}, out of range for size {size}"
    )]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
}

/// Per-axiom validation outcome. Each failed axiom carries the
/// lexicographically first witness under a row-major scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// Witness `x` with `x ∗ x ≠ 1`.
    pub v1: Option<usize>,
    /// Witness `x` with `x ∗ 1 ≠ 1`.
    pub v2: Option<usize>,
    /// Witness `x` with `1 ∗ x ≠ x`.
    pub v3: Option<usize>,
    /// Witness `(x, y, z)` with `x ∗ (y ∗ z) ≠ y ∗ (x ∗ z)`.
    pub v4: Option<[usize; 3]>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.v1.is_none() && self.v2.is_none() && self.v3.is_none() && self.v4.is_none()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            return write!(f, "all axioms hold");
        }
        let mut parts = Vec::new();
        if let Some(x) = self.v1 {
            parts.push(format!("V1 fails at x=#{x}"));
        }
        if let Some(x) = self.v2 {
            parts.push(format!("V2 fails at x=#{x}"));
        }
        if let Some(x) = self.v3 {
            parts.push(format!("V3 fails at x=#{x}"));
        }
        if let Some([x, y, z]) = self.v4 {
            parts.push(format!("V4 fails at (x,y,z)=(#{x},#{y},#{z})"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Rejection during algebra construction: either the input was malformed or
/// the table fails the axioms. The two cases are distinct so callers can
/// report them on separate channels.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("not a BE-algebra: {0}")]
    Axioms(AxiomReport),
}

/// A finite BE-algebra over elements `0..n` with unit `0`.
///
/// The Cayley table is stored flat in row-major order; `table[n*x + y]`
/// holds `x ∗ y`. Instances are only constructible from tables that pass
/// all four axioms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BEAlgebra {
    names: Vec<String>,
    table: Vec<usize>,
}

/// Checks the four BE-algebra axioms on a raw index table. The table must
/// already be structurally valid (square, entries in range); axiom V2/V3
/// are checked against index 0 as the unit.
pub fn check_axioms(n: usize, table: &[usize]) -> AxiomReport {
    debug_assert_eq!(table.len(), n * n);
    let at = |x: usize, y: usize| table[n * x + y];
    let mut report = AxiomReport {
        v1: None,
        v2: None,
        v3: None,
        v4: None,
    };
    for x in 0..n {
        if at(x, x) != 0 {
            report.v1 = Some(x);
            break;
        }
    }
    for x in 0..n {
        if at(x, 0) != 0 {
            report.v2 = Some(x);
            break;
        }
    }
    for x in 0..n {
        if at(0, x) != x {
            report.v3 = Some(x);
            break;
        }
    }
    'v4: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if at(x, at(y, z)) != at(y, at(x, z)) {
                    report.v4 = Some([x, y, z]);
                    break 'v4;
                }
            }
        }
    }
    report
}

impl BEAlgebra {
    /// Builds an algebra from labeled input: an element list and a Cayley
    /// table of labels, `table[i][j] = elements[i] ∗ elements[j]` in the
    /// given order. The element labeled `"1"` is moved to index 0 and the
    /// table is remapped accordingly; axioms are then validated.
    pub fn from_labeled(elements: &[String], table: &[Vec<String>]) -> Result<Self, AlgebraError> {
        let n = elements.len();
        if n == 0 {
            return Err(InputError::Empty.into());
        }
        for (i, label) in elements.iter().enumerate() {
            if elements[..i].contains(label) {
                return Err(InputError::DuplicateLabel(label.clone()).into());
            }
        }
        let unit = elements
            .iter()
            .position(|l| l == "1")
            .ok_or(InputError::MissingUnit)?;
        if table.len() != n {
            return Err(InputError::RowCount {
                expected: n,
                got: table.len(),
            }
            .into());
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(InputError::RowWidth {
                    row,
                    expected: n,
                    got: r.len(),
                }
                .into());
            }
        }
        // perm[i] is the post-normalization index of input element i.
        let perm: Vec<usize> = (0..n)
            .map(|i| match i.cmp(&unit) {
                std::cmp::Ordering::Less => i + 1,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => i,
            })
            .collect();
        let mut names = vec![String::new(); n];
        for (i, label) in elements.iter().enumerate() {
            names[perm[i]] = label.clone();
        }
        let mut flat = vec![0usize; n * n];
        for (i, r) in table.iter().enumerate() {
            for (j, entry) in r.iter().enumerate() {
                let v = elements.iter().position(|l| l == entry).ok_or_else(|| {
                    InputError::UnknownEntry {
                        row: i,
                        col: j,
                        label: entry.clone(),
                    }
                })?;
                flat[n * perm[i] + perm[j]] = perm[v];
            }
        }
        let report = check_axioms(n, &flat);
        if !report.holds() {
            return Err(AlgebraError::Axioms(report));
        }
        Ok(BEAlgebra { names, table: flat })
    }

    /// Builds an algebra from a raw index table with default element names
    /// (`1`, `a`, `b`, ...). Index 0 must be the unit.
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(InputError::Empty.into());
        }
        if table.len() != n * n {
            return Err(InputError::RowCount {
                expected: n,
                got: table.len() / n.max(1),
            }
            .into());
        }
        for (pos, &v) in table.iter().enumerate() {
            if v >= n {
                return Err(InputError::EntryOutOfRange {
                    row: pos / n,
                    col: pos % n,
                    value: v,
                    size: n,
                }
                .into());
            }
        }
        let report = check_axioms(n, &table);
        if !report.holds() {
            return Err(AlgebraError::Axioms(report));
        }
        Ok(BEAlgebra {
            names: default_names(n),
            table,
        })
    }

    /// Construction for tables the enumerator has already proven valid.
    pub(crate) fn from_table_unchecked(n: usize, table: Vec<usize>) -> Self {
        debug_assert!(check_axioms(n, &table).holds());
        BEAlgebra {
            names: default_names(n),
            table,
        }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    /// The unit element. Always index 0 by construction.
    pub fn unit(&self) -> usize {
        0
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[self.size() * x + y]
    }

    /// The induced relation: `x ≤ y` iff `x ∗ y = 1`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == 0
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|l| l == label)
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        (0..n)
            .map(|i| self.table[n * i..n * (i + 1)].to_vec())
            .collect()
    }

    /// Self-distributivity: `x ∗ (y ∗ z) = (x ∗ y) ∗ (x ∗ z)` for all
    /// triples. On failure the witness is the lexicographically first
    /// violating `(x, y, z)`.
    pub fn is_self_distributive(&self) -> Verdict<[usize; 3]> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul(x, self.mul(y, z)) != self.mul(self.mul(x, y), self.mul(x, z)) {
                        return Verdict::fail([x, y, z]);
                    }
                }
            }
        }
        Verdict::pass()
    }

    /// Transitivity: `y ∗ z ≤ (x ∗ y) ∗ (x ∗ z)` for all triples. On
    /// failure the witness is the lexicographically first violating
    /// `(x, y, z)`.
    pub fn is_transitive(&self) -> Verdict<[usize; 3]> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.mul(y, z);
                    let rhs = self.mul(self.mul(x, y), self.mul(x, z));
                    if !self.leq(lhs, rhs) {
                        return Verdict::fail([x, y, z]);
                    }
                }
            }
        }
        Verdict::pass()
    }

    /// Renders an index triple with element labels, e.g. `(α, α, h)`.
    pub fn label_triple(&self, t: [usize; 3]) -> String {
        format!(
            "({}, {}, {})",
            self.label(t[0]),
            self.label(t[1]),
            self.label(t[2])
        )
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i == 0 {
                "1".to_string()
            } else if i <= 26 {
                ((b'a' + (i - 1) as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

impl fmt::Display for BEAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        let width = self
            .names
            .iter()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        write!(f, "{:>width$} |", "∗")?;
        for j in 0..n {
            write!(f, " {:>width$}", self.names[j])?;
        }
        writeln!(f)?;
        write!(f, "{:->width$}-+", "")?;
        for _ in 0..n {
            write!(f, "-{:->width$}", "")?;
        }
        for i in 0..n {
            writeln!(f)?;
            write!(f, "{:>width$} |", self.names[i])?;
            for j in 0..n {
                write!(f, " {:>width$}", self.names[self.mul(i, j)])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labeled(elements: &[&str], rows: &[&[&str]]) -> Result<BEAlgebra, AlgebraError> {
        let elements: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        BEAlgebra::from_labeled(&elements, &table)
    }

    #[test]
    fn trivial_algebra_validates() {
        let a = labeled(&["1"], &[&["1"]]).unwrap();
        assert_eq!(a.size(), 1);
        assert_eq!(a.mul(0, 0), 0);
    }

    #[test]
    fn five_element_fixture_validates() {
        let a = fixtures::alpha5();
        assert_eq!(a.size(), 5);
        assert_eq!(a.names(), &["1", "α", "h", "m", "0"]);
        // α ∗ m = m and m ∗ α = α in this table.
        let al = a.index_of("α").unwrap();
        let m = a.index_of("m").unwrap();
        assert_eq!(a.label(a.mul(al, m)), "m");
        assert_eq!(a.label(a.mul(m, al)), "α");
        assert!(a.leq(al, al));
        assert!(!a.leq(m, al));
    }

    #[test]
    fn unit_is_normalized_to_index_zero() {
        // Same two-element algebra, unit listed second.
        let a = labeled(&["a", "1"], &[&["1", "1"], &["a", "1"]]).unwrap();
        assert_eq!(a.label(0), "1");
        assert_eq!(a.label(1), "a");
        assert_eq!(a.mul(1, 1), 0);
        assert_eq!(a.mul(0, 1), 1);
    }

    #[test]
    fn idempotence_failure_is_v1_witness() {
        let err = labeled(&["1", "a"], &[&["1", "a"], &["1", "a"]]).unwrap_err();
        match err {
            AlgebraError::Axioms(report) => {
                assert_eq!(report.v1, Some(1));
                assert!(report.v2.is_none());
            }
            other => panic!("expected axiom failure, got {other:?}"),
        }
    }

    #[test]
    fn exchange_failure_reports_first_triple() {
        // 1∗x=x, x∗x=1, x∗1=1 all hold; exchange fails.
        let err = labeled(
            &["1", "a", "b"],
            &[&["1", "a", "b"], &["1", "1", "a"], &["1", "b", "1"]],
        )
        .unwrap_err();
        match err {
            AlgebraError::Axioms(report) => {
                assert!(report.v1.is_none());
                assert!(report.v2.is_none());
                assert!(report.v3.is_none());
                let w = report.v4.expect("V4 witness");
                // First violating triple in row-major scan order.
                assert_eq!(w, [1, 2, 1]);
            }
            other => panic!("expected axiom failure, got {other:?}"),
        }
    }

    #[test]
    fn input_errors_are_not_axiom_failures() {
        let err = labeled(&["1", "a"], &[&["1", "a"]]).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::Input(InputError::RowCount {
                expected: 2,
                got: 1
            })
        ));

        let err = labeled(&["1", "a"], &[&["1", "z"], &["1", "1"]]).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::Input(InputError::UnknownEntry { row: 0, col: 1, .. })
        ));

        let err = labeled(&["x", "y"], &[&["x", "x"], &["x", "x"]]).unwrap_err();
        assert!(matches!(err, AlgebraError::Input(InputError::MissingUnit)));

        let err = labeled(&["1", "1"], &[&["1", "1"], &["1", "1"]]).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::Input(InputError::DuplicateLabel(_))
        ));

        let err = labeled(&[], &[]).unwrap_err();
        assert!(matches!(err, AlgebraError::Input(InputError::Empty)));
    }

    #[test]
    fn from_table_checks_range_and_axioms() {
        assert!(BEAlgebra::from_table(2, vec![0, 1, 0, 0]).is_ok());
        let err = BEAlgebra::from_table(2, vec![0, 1, 0, 2]).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::Input(InputError::EntryOutOfRange {
                row: 1,
                col: 1,
                value: 2,
                size: 2
            })
        ));
        let err = BEAlgebra::from_table(2, vec![0, 1, 1, 0]).unwrap_err();
        assert!(matches!(err, AlgebraError::Axioms(_)));
    }

    #[test]
    fn fixture_laws_match_hand_computation() {
        let a = fixtures::alpha5();
        assert!(a.is_transitive().holds);
        let sd = a.is_self_distributive();
        assert!(!sd.holds);
        // First violating triple: α ∗ (α ∗ h) = 1 but (α ∗ α) ∗ (α ∗ h) = α.
        assert_eq!(sd.witness, Some([1, 1, 2]));
        assert_eq!(a.label_triple(sd.witness.unwrap()), "(α, α, h)");

        let g = fixtures::gamma5();
        assert!(g.is_transitive().holds);
        assert!(!g.is_self_distributive().holds);

        let b = fixtures::two_element();
        assert!(b.is_transitive().holds);
        assert!(b.is_self_distributive().holds);
    }

    #[test]
    fn display_renders_cayley_grid() {
        let b = fixtures::two_element();
        let shown = b.to_string();
        assert!(shown.contains("∗ | 1 a"));
        assert!(shown.contains("a | 1 1"));
    }
}
