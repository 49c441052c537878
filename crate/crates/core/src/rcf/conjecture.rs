//! End-to-end verification across ranks.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::base::{rcf_base_case, BaseCaseError, SearchConfig};
use super::bridge::conjecture_certificate;
use super::decomposition::RcfDecomposition;
use super::induction::{induction_step, Obstruction, ObstructionCode};
use crate::poly::{verify_poly_snf, IntPoly, PolyMatrix, PolySnfCertificate};
use crate::poset::{Poset, RankedPosetSpec};
use crate::theory::{
    check_down_surjectivity, check_rank_inequality, predicted_snf_diagonal_plus, RankInequalityReport,
    SurjectivityReport, Verdict,
};

/// Largest rank size for which a failed induction step falls back to the
/// direct lattice search.
pub const FALLBACK_SEARCH_MAX_DIM: usize = 12;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub search: SearchConfig,
    /// Record wall-clock time per rank. Off by default so that reports are
    /// reproducible byte for byte.
    pub timing: bool,
    /// Embed the certificates in the report.
    pub include_certificates: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            search: SearchConfig::default(),
            timing: false,
            include_certificates: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BaseCase,
    Induction,
    FallbackSearch,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportHeader {
    pub version: &'static str,
    /// The matrix whose Smith form is certified.
    pub convention: &'static str,
    pub spec: RankedPosetSpec,
    pub r: u32,
    pub n_max: usize,
    pub l: usize,
    pub seed: u64,
}

impl ReportHeader {
    pub fn new(poset: &Poset, n_max: usize, l: usize, seed: u64) -> Self {
        Self {
            version: crate::VERSION,
            convention: "DU_n + xI",
            spec: poset.spec().clone(),
            r: poset.r(),
            n_max,
            l,
            seed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub n: usize,
    pub p_n: usize,
    pub method: Method,
    pub rcf: Verdict,
    pub certificate: Verdict,
    pub matches_prediction: bool,
    /// Annihilators of the `DU_n` decomposition.
    pub annihilators: Vec<IntPoly>,
    /// Non-unit diagonal entries of the certified Smith form of `DU_n + xI`.
    pub invariant_factors: Vec<IntPoly>,
    pub obstructions: Vec<Obstruction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<RcfDecomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snf_certificate: Option<PolySnfCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.rcf == Verdict::Pass && self.certificate == Verdict::Pass && self.matches_prediction
    }
}

/// Overall outcome, in order of precedence for exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// A certificate or decomposition failed to verify, or an internal
    /// check of the construction failed.
    VerificationFailure,
    /// Some rank is undecided: an obstruction or an exhausted search.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub header: ReportHeader,
    pub ranks: Vec<RankReport>,
    pub status: Status,
}

fn base_obstruction(n: usize, e: BaseCaseError) -> Obstruction {
    let code = match e {
        BaseCaseError::SearchFailure { .. } => ObstructionCode::BaseSearchFailure,
        _ => ObstructionCode::HypothesisFailure,
    };
    Obstruction::new(code, n, e.to_string())
}

/// Outcome of the decomposition search at one rank.
#[derive(Clone, Debug, Serialize)]
pub struct RankDecomposition {
    pub n: usize,
    pub method: Method,
    #[serde(rename = "decomposition")]
    pub dec: Option<RcfDecomposition>,
    pub obstructions: Vec<Obstruction>,
    #[serde(skip)]
    pub millis: u128,
}

/// Decompositions of `DU_0, ..., DU_{n_max}`: direct search up to `l`,
/// induction afterwards, with a direct search as fallback on small ranks.
pub fn find_decompositions(poset: &Poset, n_max: usize, l: usize, search: &SearchConfig) -> Vec<RankDecomposition> {
    let mut out: Vec<RankDecomposition> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let start = Instant::now();
        let mut obstructions = Vec::new();
        let mut method = Method::None;
        let mut dec = None;
        let prev = out.last().and_then(|f| f.dec.as_ref());
        if n <= l {
            match rcf_base_case(&poset.du_matrix(n), search) {
                Ok(d) => {
                    method = Method::BaseCase;
                    dec = Some(d);
                }
                Err(e) => obstructions.push(base_obstruction(n, e)),
            }
        } else {
            match prev {
                Some(p) => match induction_step(poset, n - 1, p) {
                    Ok(o) => {
                        method = Method::Induction;
                        dec = Some(o.du);
                    }
                    Err(o) => obstructions.push(o),
                },
                None => obstructions.push(Obstruction::new(
                    ObstructionCode::HypothesisFailure,
                    n,
                    "no decomposition at the previous rank",
                )),
            }
            if dec.is_none() {
                if poset.rank_size(n) <= FALLBACK_SEARCH_MAX_DIM {
                    match rcf_base_case(&poset.du_matrix(n), search) {
                        Ok(d) => {
                            method = Method::FallbackSearch;
                            dec = Some(d);
                        }
                        Err(e) => obstructions.push(base_obstruction(n, e)),
                    }
                } else {
                    obstructions.push(Obstruction::new(
                        ObstructionCode::BaseSearchFailure,
                        n,
                        format!("p_n = {} exceeds the direct search limit", poset.rank_size(n)),
                    ));
                }
            }
        }
        out.push(RankDecomposition {
            n,
            method,
            dec,
            obstructions,
            millis: start.elapsed().as_millis(),
        });
    }
    out
}

/// Verify that `DU_n + xI` has a Smith form over `Z[x]` for
/// `0 <= n <= n_max`, with replayed certificates compared against the
/// predicted diagonal.
pub fn verify_conjecture(poset: &Poset, n_max: usize, l: usize, config: &VerifyConfig) -> ConjectureReport {
    let found = find_decompositions(poset, n_max, l, &config.search);
    // Warm the rank memo so the parallel section only reads it.
    poset.rank(n_max + 1);
    let ranks: Vec<RankReport> = found
        .into_par_iter()
        .map(|f| {
            let n = f.n;
            let start = Instant::now();
            let mut report = RankReport {
                n,
                p_n: poset.rank_size(n),
                method: f.method,
                rcf: Verdict::Fail,
                certificate: Verdict::Fail,
                matches_prediction: false,
                annihilators: Vec::new(),
                invariant_factors: Vec::new(),
                obstructions: f.obstructions,
                decomposition: None,
                snf_certificate: None,
                timing_ms: None,
            };
            if let Some(dec) = f.dec {
                report.rcf = Verdict::Pass;
                report.annihilators = dec.annihilators.clone();
                match conjecture_certificate(&dec) {
                    Ok(cert) => {
                        let m = PolyMatrix::x_plus(&dec.operator).expect("square");
                        report.certificate = verify_poly_snf(&cert, &m).into();
                        report.matches_prediction = cert.diag == predicted_snf_diagonal_plus(poset, n);
                        report.invariant_factors = cert.invariant_factors();
                        if config.include_certificates {
                            report.snf_certificate = Some(cert);
                            report.decomposition = Some(dec);
                        }
                    }
                    Err(e) => report.obstructions.push(Obstruction::new(
                        ObstructionCode::ConstructionFailure,
                        n,
                        format!("bridge failed: {e}"),
                    )),
                }
            }
            if config.timing {
                report.timing_ms = Some(f.millis + start.elapsed().as_millis());
            }
            report
        })
        .collect();

    let status = if ranks.iter().all(RankReport::passed) {
        Status::Pass
    } else if ranks.iter().any(|r| {
        (r.rcf == Verdict::Pass && (r.certificate == Verdict::Fail || !r.matches_prediction))
            || r.obstructions.iter().any(|o| o.code == ObstructionCode::ConstructionFailure)
    }) {
        Status::VerificationFailure
    } else {
        Status::Inconclusive
    };
    ConjectureReport {
        header: ReportHeader::new(poset, n_max, l, config.search.seed),
        ranks,
        status,
    }
}

/// The three hypotheses of the inductive construction.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub down_surjective: SurjectivityReport,
    pub rank_inequality: RankInequalityReport,
    pub base_cases_rcf: Vec<(usize, Verdict)>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.down_surjective.all_surjective()
            && self.rank_inequality.holds
            && self.base_cases_rcf.iter().all(|(_, v)| *v == Verdict::Pass)
    }
}

pub fn check_hypotheses(poset: &Poset, l: usize, n_max: usize, search: &SearchConfig) -> HypothesisReport {
    HypothesisReport {
        down_surjective: check_down_surjectivity(poset, n_max),
        rank_inequality: check_rank_inequality(poset, l, n_max),
        base_cases_rcf: (0..=l)
            .map(|n| (n, rcf_base_case(&poset.du_matrix(n), search).is_ok().into()))
            .collect(),
    }
}
