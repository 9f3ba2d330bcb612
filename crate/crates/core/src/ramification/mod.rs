//! Rational self-maps of the projective line and their ramification.

mod map;
mod oracle;
mod profile;

pub use map::{critical_form, map_compose, map_eval, map_make, CriticalForm, RationalMap};
pub use oracle::{
    brute_force_profile, compare_with_oracle, complete_extension_degree, oracle_extension_degree,
    OracleComparison, ORACLE_LIMIT,
};
pub use profile::{
    branch_points, is_triple_only, ramification_profile, ClosedPoint, RamificationEntry,
    RamificationProfile, TripleOnlyVerdict,
};
