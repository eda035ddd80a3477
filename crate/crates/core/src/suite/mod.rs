//! The claim suite: every registered claim evaluated on every corpus
//! instance, one record per (claim, instance), in a stable order.

pub mod claims;
mod instance;

pub use claims::{describe, is_claim, matches, CLAIMS};
pub use instance::{instance_checks, BRUTE_FORCE_LIMIT, ENUMERATION_LIMIT, STATE_SCAN_DENOMINATOR, STATE_SCAN_LIMIT};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::builtin::Instance;
use crate::document::{parse_algebra, DocumentError};
use crate::report::{Check, Verdict};
use crate::states::check_state;

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Claim ids or group prefixes to keep; `None` keeps everything.
    pub claims: Option<Vec<String>>,
    pub keep_going: bool,
    /// Worker threads; `None` uses the default pool.
    pub workers: Option<usize>,
    /// Adds per-instance wall time to the records, which makes reports
    /// differ between runs.
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRecord {
    pub claim: String,
    pub instance: String,
    pub verdict: Verdict,
    /// Witness elements by label.
    pub witness: Vec<String>,
    pub note: String,
    /// How many individual checks were folded into this record.
    pub evaluations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub logged: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub instances: Vec<String>,
    pub records: Vec<SuiteRecord>,
    pub summary: SuiteSummary,
    /// Set when the run stopped at the first instance with a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped_after: Option<String>,
}

impl SuiteReport {
    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = write!(out, "{:<12} {:<40} {}", r.verdict.as_str().to_uppercase(), r.claim, r.instance);
            if !r.witness.is_empty() {
                let _ = write!(out, " witness=[{}]", r.witness.join(", "));
            }
            if !r.note.is_empty() {
                let _ = write!(out, " -- {}", r.note);
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} records: {} pass, {} fail, {} inapplicable, {} logged",
            self.records.len(),
            s.pass,
            s.fail,
            s.inapplicable,
            s.logged
        );
        if let Some(id) = &self.stopped_after {
            let _ =
                writeln!(out, "stopped after the first failing instance {id}; rerun with --keep-going for the rest");
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("corpus directory {0} contains no .json documents")]
    EmptyCorpus(String),
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("{path}: {source}")]
    Document { path: String, source: DocumentError },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

/// Worst verdict first: a failure anywhere fails the record.
fn rank(v: Verdict) -> u8 {
    match v {
        Verdict::Fail => 0,
        Verdict::Logged => 1,
        Verdict::Pass => 2,
        Verdict::Inapplicable => 3,
    }
}

fn fold(inst: &Instance, checks: Vec<Check>, elapsed_ms: Option<u64>) -> Vec<SuiteRecord> {
    let mut groups: BTreeMap<&'static str, Vec<Check>> = BTreeMap::new();
    for c in checks {
        groups.entry(c.claim).or_default().push(c);
    }
    let labels = |c: &Check| {
        c.witness
            .iter()
            .map(|&x| if x < inst.algebra.size() { inst.algebra.label(x).to_owned() } else { format!("#{x}") })
            .collect()
    };
    groups
        .into_iter()
        .map(|(claim, checks)| {
            let rep = checks.iter().min_by_key(|c| (rank(c.verdict), c.note.is_empty())).expect("nonempty group");
            SuiteRecord {
                claim: claim.to_owned(),
                instance: inst.id.clone(),
                verdict: rep.verdict,
                witness: labels(rep),
                note: rep.note.clone(),
                evaluations: checks.len(),
                elapsed_ms,
            }
        })
        .collect()
}

fn run_instance(inst: &Instance, timings: bool) -> Vec<SuiteRecord> {
    let start = Instant::now();
    let checks = instance_checks(inst);
    let elapsed = timings.then(|| start.elapsed().as_millis() as u64);
    fold(inst, checks, elapsed)
}

fn validate_filter(opts: &SuiteOptions) -> Result<(), SuiteError> {
    for item in opts.claims.iter().flatten() {
        if !CLAIMS.iter().any(|(c, _)| matches(c, item)) {
            return Err(SuiteError::UnknownClaim(item.clone()));
        }
    }
    Ok(())
}

fn selected(opts: &SuiteOptions, claim: &str) -> bool {
    opts.claims.as_ref().is_none_or(|items| items.iter().any(|i| matches(claim, i)))
}

pub fn run_suite(corpus: &[Instance], opts: &SuiteOptions) -> Result<SuiteReport, SuiteError> {
    validate_filter(opts)?;
    let work = || -> Vec<Vec<SuiteRecord>> { corpus.par_iter().map(|inst| run_instance(inst, opts.timings)).collect() };
    let per_instance = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| SuiteError::Pool(e.to_string()))?
            .install(work),
        None => work(),
    };

    let mut records = Vec::new();
    let mut stopped_after = None;
    for (inst, recs) in corpus.iter().zip(per_instance) {
        let recs: Vec<SuiteRecord> = recs.into_iter().filter(|r| selected(opts, &r.claim)).collect();
        let failed = recs.iter().any(|r| r.verdict == Verdict::Fail);
        records.extend(recs);
        if failed && !opts.keep_going {
            stopped_after = Some(inst.id.clone());
            break;
        }
    }
    if stopped_after.is_none() {
        for (claim, _) in CLAIMS {
            if selected(opts, claim) && !records.iter().any(|r| r.claim == *claim) {
                records.push(SuiteRecord {
                    claim: (*claim).to_owned(),
                    instance: "-".into(),
                    verdict: Verdict::Inapplicable,
                    witness: Vec::new(),
                    note: "no corpus instance exercises this claim".into(),
                    evaluations: 0,
                    elapsed_ms: None,
                });
            }
        }
    }
    records.sort_by(|a, b| (&a.claim, &a.instance).cmp(&(&b.claim, &b.instance)));
    let count = |v: Verdict| records.iter().filter(|r| r.verdict == v).count();
    let summary = SuiteSummary {
        pass: count(Verdict::Pass),
        fail: count(Verdict::Fail),
        inapplicable: count(Verdict::Inapplicable),
        logged: count(Verdict::Logged),
    };
    Ok(SuiteReport { instances: corpus.iter().map(|i| i.id.clone()).collect(), records, summary, stopped_after })
}

/// Loads every `*.json` document in `dir`, sorted by file name. Document
/// states are checked as part of the instance through `states.*` claims.
pub fn load_corpus(dir: &Path) -> Result<Vec<Instance>, SuiteError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(SuiteError::EmptyCorpus(dir.display().to_string()));
    }
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)?;
            let doc = parse_algebra(&text)
                .and_then(|d| d.load())
                .map_err(|source| SuiteError::Document { path: p.display().to_string(), source })?;
            let id = p.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            Ok(Instance { id, algebra: doc.algebra, operators: doc.operators, rejected: Vec::new() })
        })
        .collect()
}

/// Verdicts of the document's own states, for commands that load a file.
pub fn document_state_checks(a: &crate::BlAlgebra, states: &[(String, crate::states::RationalState)]) -> Vec<Check> {
    states
        .iter()
        .flat_map(|(name, s)| {
            check_state(a, s).checks.into_iter().map(move |c| c.with_context(&format!("state {name}")))
        })
        .collect()
}
