//! Rational canonical form over `Z` for `DU_n`, and the certificates it
//! yields.

mod base;
mod bridge;
mod conjecture;
mod decomposition;
mod induction;

pub use base::{integer_roots, rational_invariant_factors, rcf_base_case, BaseCaseError, SearchConfig};
pub use bridge::{conjecture_certificate, rcf_to_certificate};
pub use conjecture::{
    check_hypotheses, find_decompositions, verify_conjecture, ConjectureReport, HypothesisReport, Method, RankDecomposition, RankReport, ReportHeader,
    Status, VerifyConfig, FALLBACK_SEARCH_MAX_DIM,
};
pub use decomposition::{check_rcf, verify_rcf, RcfDecomposition};
pub use induction::{
    build_induction_state, induction_step, lift_generators, pivot_fix, InductionOutcome, InductionState,
    Obstruction, ObstructionCode, Tweak,
};
