//! Theorem engine for `cat`, `cd` and `TC_r` of group homomorphisms.
//!
//! Closed forms give exact values where their hypotheses are verified.
//! Elsewhere an interval propagation engine combines the general
//! inequalities between the invariants. Every value carries the steps it
//! rests on.

mod closed_forms;
mod engine;
mod facts;
mod query;
mod rules;
mod value;

pub use closed_forms::{
    cat_cd_of_free_epi, cd_of_abelian_epi, check_r, nilpotent_tcr_bounds, surface_bounds,
    tcr_injective_into_abelian, tcr_of_abelian_epi, tcr_of_abelian_group, tcr_of_abelian_injection,
    tcr_of_free_epi, NilpotentFacts, NilpotentFlavor, SurfaceBounds,
};
pub use engine::Engine;
pub use facts::{replay, DerivationStep, FactKey, Measure, Relation, Subject};
pub use query::{
    compute, evaluate, surface_invariants, Branch, Evaluation, FactSubject, HomSpec, Hypotheses,
    HypothesisStatus, InvariantKind, InvariantReport, Query, SurfaceInvariants, UserFact,
};
pub use rules::Rule;
pub use value::{Bound, InvariantValue, ValueKind};
