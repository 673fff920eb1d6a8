//! Analysis toolkit for monotone simple games, built around the
//! split-voting legislature family: coalition evaluation, desirability
//! orderings, dimension certification by exact LP refutation, and exact
//! Banzhaf / Shapley-Shubik power indices with closed-form against
//! brute-force cross-validation.

pub mod combinatorics;
pub mod dimension;
pub mod error;
pub mod game;
pub mod json;
pub mod legco;
pub mod power;
pub mod profile;
pub mod structure;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use game::{
    check_monotone, games_equal, maximal_losing, minimal_winning, player, AmalgamatedMatrix,
    Coalition, EnumCap, EvalTable, ExplicitGame, GameComparison, GameDef, PlayerId, WeightedRule,
};
pub use legco::{
    canonical_realization, catalog_coalition, coalition_catalog, exchange_chain,
    factor_decomposition, legco_game, profile_table, scenario_realization, FactorClaim,
    FactorDecomposition, LegcoGame, PlayerCategories, Scenario,
};
pub use profile::{ChamberRuleGame, Profile, ProfileTable, ProfileView};
pub use dimension::{
    certify_dimension, decomposition_report, refute_symmetric_realization, separable, symmetrize,
    CatalogCheck, ClaimStatus, DecompositionReport, DimensionCertificate, DimensionClaim,
    LowerEvidence, RefutationCase, RefutationTranscript, SymmetricRealization, SymmetricRow,
};
pub use power::{
    banzhaf_closed, banzhaf_enum, bi_ratio_asymptotic, conjecture_probe, rational_to_f64,
    ssi_enum, ssi_gov_closed, ssi_ord_closed, sweep, IndexVector, ProbeReport, ProbeRow,
    SweepRow, SwingCounts,
};
pub use structure::{
    compare_desirability, compare_weak_desirability, crucial_vector, find_swap_violation,
    is_complete, is_swap_robust, is_weakly_complete, proposition1_report, ClauseOutcome,
    ComparisonResult, CrucialVector, Proposition1Report, SwapWitness,
};
