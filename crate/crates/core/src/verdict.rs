use serde::Serialize;

/// Boolean decision plus, on failure, a machine-readable witness.
///
/// Deciders in this crate return the lexicographically first witness under
/// their documented scan order, so verdicts are deterministic and every
/// failure can be re-evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: W) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}
