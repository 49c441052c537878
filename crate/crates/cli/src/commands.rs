//! Payload construction and exit codes for each subcommand.

use std::fmt;

use anyhow::Result;
use diffposet::poset::{AxiomReport, SPEC_GRAMMAR};
use diffposet::rcf::{
    check_hypotheses, find_decompositions, verify_conjecture, verify_rcf, ConjectureReport, HypothesisReport,
    Method, Obstruction, RankReport, ReportHeader, SearchConfig, Status, VerifyConfig,
};
use diffposet::theory::{auxiliary_combinatorial_checks, predict_record, AuxReport, PredictionRecord};
use diffposet::{IntMatrix, Poset, RankedPosetSpec};
use serde::Serialize;
use serde_json::Value;

use crate::cache::{Cache, CacheKey};
use crate::config::{Command, RunConfig, Which};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VERIFICATION_FAILURE: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

/// Bad input from the command line.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn parse_spec(s: &str) -> Result<RankedPosetSpec, UsageError> {
    s.parse::<RankedPosetSpec>().map_err(|e| {
        let msg = e.to_string();
        if msg.contains(SPEC_GRAMMAR) {
            UsageError(msg)
        } else {
            UsageError(format!("{msg}\nspec grammar: {SPEC_GRAMMAR}"))
        }
    })
}

fn to_payload<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct RankRow {
    n: usize,
    p_n: usize,
    delta_p: i64,
}

#[derive(Serialize)]
struct RanksOutput {
    spec: String,
    r: u32,
    ranks: Vec<RankRow>,
}

#[derive(Serialize)]
struct MatrixOutput<'a> {
    spec: String,
    which: &'a str,
    n: usize,
    matrix: IntMatrix,
}

#[derive(Serialize)]
struct HypothesesOutput {
    spec: String,
    l: usize,
    n_max: usize,
    passed: bool,
    hypotheses: HypothesisReport,
    rank_sizes: AuxReport,
}

#[derive(Serialize)]
struct PredictOutput {
    spec: String,
    n_max: usize,
    passed: bool,
    records: Vec<PredictionRecord>,
}

/// The conjecture report with the axiom, hypothesis and prediction checks
/// that precede it.
#[derive(Serialize)]
struct VerifyOutput<'a> {
    header: &'a ReportHeader,
    axioms: AxiomReport,
    hypotheses: HypothesisReport,
    predictions: Vec<PredictionRecord>,
    ranks: &'a [RankReport],
    status: Status,
}

#[derive(Serialize)]
struct RcfOutput {
    spec: String,
    n: usize,
    l: usize,
    seed: u64,
    method: Method,
    verified: bool,
    decomposition: Option<diffposet::rcf::RcfDecomposition>,
    obstructions: Vec<Obstruction>,
}

/// A finished command: the JSON payload and the exit code it implies.
pub struct Outcome {
    pub payload: String,
    pub exit: u8,
}

pub fn run(command: &Command, cfg: &RunConfig, cache: &Cache) -> Result<Outcome> {
    let spec = parse_spec(&cfg.spec)?;
    let canonical = spec.to_string();
    let poset = Poset::new(spec);
    let l = cfg.l_for(poset.r());
    let n_max = cfg.max_n;
    let search = SearchConfig::with_seed(cfg.seed);

    let (key, compute): (CacheKey, Box<dyn FnOnce() -> Result<String>>) = match command {
        Command::Ranks => (
            CacheKey::new(&canonical, "ranks", n_max),
            Box::new(|| {
                to_payload(&RanksOutput {
                    spec: canonical.clone(),
                    r: poset.r(),
                    ranks: (0..=n_max)
                        .map(|n| RankRow {
                            n,
                            p_n: poset.rank_size(n),
                            delta_p: poset.delta(n),
                        })
                        .collect(),
                })
            }),
        ),
        Command::Matrix { which, n } => {
            if *which == Which::D && *n == 0 {
                return Err(UsageError("the down map D_0 does not exist; use --n >= 1".into()).into());
            }
            (
                CacheKey::new(&canonical, format!("matrix:{}", which.name()), *n),
                Box::new(|| {
                    let matrix = match which {
                        Which::U => poset.up_matrix(*n),
                        Which::D => poset.down_matrix(*n)?,
                        Which::Du => poset.du_matrix(*n),
                        Which::Ud => poset.ud_matrix(*n),
                    };
                    to_payload(&MatrixOutput {
                        spec: canonical.clone(),
                        which: which.name(),
                        n: *n,
                        matrix,
                    })
                }),
            )
        }
        Command::Axioms => (
            CacheKey::new(&canonical, "axioms", n_max),
            Box::new(|| to_payload(&poset.verify_axioms(n_max))),
        ),
        Command::Hypotheses => (
            CacheKey::new(&canonical, format!("hypotheses:l={l}:seed={}", cfg.seed), n_max),
            Box::new(|| {
                let hypotheses = check_hypotheses(&poset, l, n_max, &search);
                let rank_sizes = auxiliary_combinatorial_checks(&poset, n_max);
                to_payload(&HypothesesOutput {
                    spec: canonical.clone(),
                    l,
                    n_max,
                    passed: hypotheses.passed() && rank_sizes.passed,
                    hypotheses,
                    rank_sizes,
                })
            }),
        ),
        Command::Predict => (
            CacheKey::new(&canonical, "predict", n_max),
            Box::new(|| {
                let records: Vec<PredictionRecord> = (0..=n_max).map(|n| predict_record(&poset, n)).collect();
                to_payload(&PredictOutput {
                    spec: canonical.clone(),
                    n_max,
                    passed: records.iter().all(PredictionRecord::passed),
                    records,
                })
            }),
        ),
        Command::Verify { timing, no_certificates } => {
            let config = VerifyConfig {
                search: search.clone(),
                timing: *timing,
                include_certificates: !no_certificates,
            };
            let key = CacheKey::new(
                &canonical,
                format!("verify:l={l}:seed={}:certificates={}", cfg.seed, !no_certificates),
                n_max,
            );
            let compute = Box::new(move || verify_payload(&poset, n_max, l, &config));
            if *timing {
                // Timings differ from run to run; never replay them.
                let payload = compute()?;
                return Ok(Outcome {
                    exit: exit_code(command, &payload)?,
                    payload,
                });
            }
            (key, compute)
        }
        Command::Rcf { n } => (
            CacheKey::new(&canonical, format!("rcf:l={l}:seed={}", cfg.seed), *n),
            Box::new(|| {
                let found = find_decompositions(&poset, *n, l.min(*n), &search)
                    .pop()
                    .expect("ranks 0..=n");
                to_payload(&RcfOutput {
                    spec: canonical.clone(),
                    n: *n,
                    l: l.min(*n),
                    seed: cfg.seed,
                    method: found.method,
                    verified: found.dec.as_ref().is_some_and(verify_rcf),
                    decomposition: found.dec,
                    obstructions: found.obstructions,
                })
            }),
        ),
    };
    let (payload, _) = cache.get_or_compute(&key, compute)?;
    Ok(Outcome {
        exit: exit_code(command, &payload)?,
        payload,
    })
}

fn verify_payload(poset: &Poset, n_max: usize, l: usize, config: &VerifyConfig) -> Result<String> {
    let axioms = poset.verify_axioms(n_max);
    let hypotheses = check_hypotheses(poset, l, n_max, &config.search);
    let predictions: Vec<PredictionRecord> = (0..=n_max).map(|n| predict_record(poset, n)).collect();
    let ConjectureReport { header, ranks, status } = verify_conjecture(poset, n_max, l, config);
    let consistent = axioms.passed && predictions.iter().all(PredictionRecord::passed);
    let status = if consistent { status } else { Status::VerificationFailure };
    to_payload(&VerifyOutput {
        header: &header,
        axioms,
        hypotheses,
        predictions,
        ranks: &ranks,
        status,
    })
}

/// Exit code implied by a payload. Works on cached payloads too, so a
/// cache hit and a fresh run always agree.
pub fn exit_code(command: &Command, payload: &str) -> Result<u8> {
    let v: Value = serde_json::from_str(payload)?;
    let passed = |field: &str, fail: u8| if v[field] == Value::Bool(true) { EXIT_PASS } else { fail };
    Ok(match command {
        Command::Ranks | Command::Matrix { .. } => EXIT_PASS,
        Command::Axioms => passed("passed", EXIT_VERIFICATION_FAILURE),
        Command::Predict => passed("passed", EXIT_VERIFICATION_FAILURE),
        Command::Hypotheses => passed("passed", EXIT_INCONCLUSIVE),
        Command::Rcf { .. } => {
            if v["verified"] == Value::Bool(true) {
                EXIT_PASS
            } else if v["decomposition"].is_null() {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_VERIFICATION_FAILURE
            }
        }
        Command::Verify { .. } => match v["status"].as_str() {
            Some("pass") => EXIT_PASS,
            Some("inconclusive") => EXIT_INCONCLUSIVE,
            _ => EXIT_VERIFICATION_FAILURE,
        },
    })
}
