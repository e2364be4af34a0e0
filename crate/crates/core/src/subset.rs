//! Subsets of a finite algebra's carrier as bitmasks.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::BEAlgebra;

/// Carrier sizes above this are refused by subset-based scans: masks are
/// machine words and 2^n subset enumeration is the intended use.
pub const MAX_SUBSET_SIZE: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("subset over {n} elements does not match algebra of size {algebra}")]
    SizeMismatch { n: usize, algebra: usize },
    #[error("the empty subset is not accepted here")]
    Empty,
    #[error("label {0:?} is not an element of the algebra")]
    UnknownLabel(String),
    #[error("carrier size {0} exceeds the subset-scan cap of {MAX_SUBSET_SIZE}")]
    TooLarge(usize),
}

/// A subset of `{0, .., n-1}` stored as a bitmask. Ordered by `(n, mask)`,
/// which makes sorted collections deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset {
    n: usize,
    mask: u64,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SUBSET_SIZE);
        Subset { n, mask: 0 }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_SUBSET_SIZE);
        Subset {
            n,
            mask: (1u64 << n) - 1,
        }
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= MAX_SUBSET_SIZE);
        debug_assert_eq!(mask & !((1u64 << n) - 1), 0, "mask has bits beyond n");
        Subset { n, mask }
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Self {
        let mut s = Subset::empty(n);
        for &i in indices {
            assert!(i < n, "index {i} out of range for size {n}");
            s.mask |= 1 << i;
        }
        s
    }

    /// Parses a comma-separated label list (e.g. `"1,α,h"`) against an
    /// algebra's element names.
    pub fn from_labels(alg: &BEAlgebra, labels: &str) -> Result<Self, SubsetError> {
        let n = alg.size();
        if n > MAX_SUBSET_SIZE {
            return Err(SubsetError::TooLarge(n));
        }
        let mut s = Subset::empty(n);
        for label in labels.split(',') {
            let label = label.trim();
            if label.is_empty() {
                continue;
            }
            let i = alg
                .index_of(label)
                .ok_or_else(|| SubsetError::UnknownLabel(label.to_string()))?;
            s.mask |= 1 << i;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.mask >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.n);
        self.mask |= 1 << i;
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == (1u64 << self.n) - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&i| self.contains(i))
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.n == other.n && self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        assert_eq!(self.n, other.n);
        Subset {
            n: self.n,
            mask: self.mask | other.mask,
        }
    }

    /// All nonempty subsets of `{0, .., n-1}` in ascending mask order.
    pub fn nonempty_subsets(n: usize) -> Result<impl Iterator<Item = Subset>, SubsetError> {
        if n > MAX_SUBSET_SIZE {
            return Err(SubsetError::TooLarge(n));
        }
        Ok((1..1u64 << n).map(move |mask| Subset { n, mask }))
    }

    /// Renders the subset with element labels, e.g. `{1, α, h}`.
    pub fn labels(&self, alg: &BEAlgebra) -> String {
        let inner: Vec<&str> = self.iter().map(|i| alg.label(i)).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.iter().map(|i| format!("#{i}")).collect();
        write!(f, "{{{}}}", inner.join(", "))
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}
