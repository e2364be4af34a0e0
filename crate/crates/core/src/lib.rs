//! Decision procedures, enumeration, and brute-force verification for
//! finite BE-algebras and N-structures.
//!
//! The crate decides every ideal notion it models by several independent
//! methods, enumerates all BE-algebras of a given size up to isomorphism,
//! and cross-checks a family of theorems over that universe, reporting any
//! counterexample as a self-contained artifact.
//!
//! Start with the runnable examples, one per capability:
//!
//! * `validate_algebra`: axiom checking with per-axiom witnesses
//! * `ideal_family`: deciding and enumerating crisp ideals
//! * `cut_analysis`: N-function cuts over the critical-threshold grid
//! * `n_ideal_check`: the N-ideal decision with failure witnesses
//! * `ek_ideal_methods`: one structure, four independent deciders
//! * `enumerate_algebras`: exhaustive enumeration up to isomorphism
//! * `theorem_campaign`: the full verification campaign
//!
//! Run one with `cargo run --example ek_ideal_methods`. The same
//! functionality is scriptable through the thin `bealg` binary.

pub mod algebra;
pub mod campaign;
pub mod ek;
pub mod enumerate;
pub mod fixtures;
pub mod grid;
pub mod ideal;
pub mod io;
pub mod nfun;
pub mod rat;
pub mod subset;
pub mod verdict;

pub use algebra::{AlgebraError, AxiomReport, BEAlgebra, InputError};
pub use campaign::{
    run_campaign, CampaignConfig, CampaignError, CampaignReport, CheckTally, Counterexample,
    Finding, SizeSummary,
};
pub use ek::{EkMethod, EkParams, EkVerdict, EkWitness};
pub use enumerate::{
    count_algebras, enumerate_algebras, for_each_algebra, EnumError, EnumerationConfig,
};
pub use grid::{critical_thresholds, Breakpoint, BreakpointSource, ThresholdGrid};
pub use ideal::{enumerate_ideals, is_ideal_def, is_ideal_lemma, IdealFamily, IdealViolation};
pub use io::{
    load_algebra, load_campaign_config, load_n_function, render_json, save_algebra,
    save_n_function, write_json, AlgebraFile, FileError, NFunctionFile,
};
pub use nfun::{
    cut, employed, employed_or_conditional, is_n_ideal, k_employed, level_set, q_set, DomainError,
    NFunction, PointAssertion,
};
pub use rat::Rat;
pub use subset::{Subset, SubsetError};
pub use verdict::Verdict;
