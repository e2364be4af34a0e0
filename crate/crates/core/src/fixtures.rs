//! Worked fixtures used by the examples, the verification campaign, and the
//! test suite.
//!
//! Two five-element algebras exercise most of the interesting behavior:
//! both are transitive but not self-distributive, and each carries an
//! N-function with known cut structure. The two-element algebra is the
//! smallest nontrivial case and is both transitive and self-distributive.

use std::collections::BTreeMap;

use crate::algebra::BEAlgebra;
use crate::nfun::NFunction;
use crate::rat::Rat;

fn build(elements: &[&str], rows: &[&[&str]]) -> BEAlgebra {
    let elements: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|s| s.to_string()).collect())
        .collect();
    BEAlgebra::from_labeled(&elements, &table).expect("fixture table is a BE-algebra")
}

fn nfun(alg: &BEAlgebra, values: &[(&str, &str)]) -> NFunction {
    let map: BTreeMap<String, Rat> = values
        .iter()
        .map(|(l, v)| (l.to_string(), Rat::parse(v).unwrap()))
        .collect();
    NFunction::from_labeled(alg, &map).expect("fixture values are in range")
}

/// Five-element algebra over `{1, α, h, m, 0}`. Transitive, not
/// self-distributive. Its ideals are `{1}`, `{1, m}`, `{1, α, h}`, and the
/// whole set.
pub fn alpha5() -> BEAlgebra {
    build(
        &["1", "α", "h", "m", "0"],
        &[
            &["1", "α", "h", "m", "0"],
            &["1", "1", "α", "m", "m"],
            &["1", "1", "1", "m", "m"],
            &["1", "α", "h", "1", "α"],
            &["1", "1", "α", "1", "1"],
        ],
    )
}

/// N-function on [`alpha5`] with values `-7/10` on `{1, α, h}` and `-1/5`
/// on `{m, 0}`. This function is an N-ideal.
pub fn alpha5_nfun() -> NFunction {
    nfun(
        &alpha5(),
        &[
            ("1", "-7/10"),
            ("α", "-7/10"),
            ("h", "-7/10"),
            ("m", "-1/5"),
            ("0", "-1/5"),
        ],
    )
}

/// Reference cut table for [`alpha5_nfun`] as displayed alongside the
/// original worked example: intervals of `t` paired with the element labels
/// the display claims for `C(f; t)`.
///
/// The final row disagrees with the computed cut on `[-1/5, 0]`, where the
/// cut is the whole set, not `{1, α, h}`. The campaign recomputes every
/// interval and reports the mismatch as a finding rather than adopting
/// either side silently.
pub fn alpha5_reference_cuts() -> Vec<(Rat, Rat, Vec<&'static str>)> {
    let r = |s: &str| Rat::parse(s).unwrap();
    vec![
        (r("-1"), r("-7/10"), vec![]),
        (r("-7/10"), r("-1/5"), vec!["1", "α", "h"]),
        (r("-1/5"), r("0"), vec!["1", "α", "h"]),
    ]
}

/// Five-element algebra over `{1, γ, 0, m, ω}`. Transitive, not
/// self-distributive. Its ideals are `{1}`, `{1, m}`, `{1, γ, 0}`, and the
/// whole set.
pub fn gamma5() -> BEAlgebra {
    build(
        &["1", "γ", "0", "m", "ω"],
        &[
            &["1", "γ", "0", "m", "ω"],
            &["1", "1", "γ", "m", "m"],
            &["1", "1", "1", "m", "m"],
            &["1", "γ", "0", "1", "γ"],
            &["1", "1", "γ", "1", "1"],
        ],
    )
}

/// N-function on [`gamma5`]. Not an N-ideal (the cut at `-4/5` is not an
/// ideal), yet a conditional-point ideal for suitable `k`.
pub fn gamma5_nfun() -> NFunction {
    nfun(
        &gamma5(),
        &[
            ("1", "-9/10"),
            ("γ", "-4/5"),
            ("0", "-7/10"),
            ("m", "-9/10"),
            ("ω", "-4/5"),
        ],
    )
}

/// The two-element BE-algebra `{1, a}` with `a ∗ a = 1`. Transitive and
/// self-distributive.
pub fn two_element() -> BEAlgebra {
    build(&["1", "a"], &[&["1", "a"], &["1", "1"]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_construct() {
        assert_eq!(alpha5().size(), 5);
        assert_eq!(gamma5().size(), 5);
        assert_eq!(two_element().size(), 2);
        assert_eq!(alpha5_nfun().len(), 5);
        assert_eq!(gamma5_nfun().len(), 5);
        assert_eq!(alpha5_reference_cuts().len(), 3);
    }
}
