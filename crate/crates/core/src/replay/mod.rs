//! Exact replay of the argument that rules out `b ∉ F_q`, and of the
//! closing argument for `b ∈ F_q`.
//!
//! The replay is split into stages. Each stage recomputes a group of
//! identities from first principles and compares them with the named
//! polynomials in the corpus. Every comparison is equality of canonical forms.
//!
//! ```
//! use niho_core::mvpoly::Corpus;
//! use niho_core::replay::{run_all, Stage};
//!
//! let report = run_all(&Corpus::builtin(), &[Stage::Coefficients]).unwrap();
//! assert!(report.passed());
//! ```

mod cases;
mod certificate;
mod closing;
mod coefficients;
mod elimination;
mod fixed_b;
mod resultants;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::mvpoly::{Corpus, MvPoly, MvPolyError};

pub use certificate::{derive_certificates, CERTIFICATE_PREFIX};
pub use coefficients::{derive_extension, derive_fixed_b, Derived};
pub use fixed_b::unique_root_equivalence;

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("unknown stage {0:?}")]
    UnknownStage(String),
    #[error("stage {stage} needs {needs}, which was not requested")]
    MissingDependency { stage: Stage, needs: Stage },
    #[error(transparent)]
    Poly(#[from] MvPolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    /// The quartic in `x` and its `E`, `F` coefficient lists.
    Coefficients,
    /// The `D`-system, its reduction and the `h` polynomials.
    Elimination,
    Resultants,
    Cases,
    /// Elimination again once `E3 = 0`, and the `L` closed forms.
    Closing,
    /// The case `b ∈ F_q`.
    FixedB,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Coefficients,
        Stage::Elimination,
        Stage::Resultants,
        Stage::Cases,
        Stage::Closing,
        Stage::FixedB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Coefficients => "coefficients",
            Stage::Elimination => "elimination",
            Stage::Resultants => "resultants",
            Stage::Cases => "cases",
            Stage::Closing => "closing",
            Stage::FixedB => "fixed-b",
        }
    }

    /// Stages whose results this one relies on.
    pub fn deps(self) -> &'static [Stage] {
        match self {
            Stage::Coefficients | Stage::FixedB => &[],
            Stage::Elimination => &[Stage::Coefficients],
            Stage::Resultants => &[Stage::Elimination],
            Stage::Cases => &[Stage::Resultants],
            Stage::Closing => &[Stage::Coefficients],
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = ReplayError;

    fn from_str(s: &str) -> Result<Stage, ReplayError> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| ReplayError::UnknownStage(s.to_string()))
    }
}

/// `stages` plus everything they depend on, in run order.
pub fn with_dependencies(stages: &[Stage]) -> Vec<Stage> {
    let mut out: Vec<Stage> = Vec::new();
    let mut todo: Vec<Stage> = stages.to_vec();
    while let Some(s) = todo.pop() {
        if !out.contains(&s) {
            out.push(s);
            todo.extend_from_slice(s.deps());
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The mathematics checks out but a printed form differs from the derived one.
    DisplayMismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Cleared denominator powers, pseudo-division exponents and similar audit data.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageReport {
    pub stage: Stage,
    pub records: Vec<IdentityRecord>,
    pub millis: u128,
}

impl StageReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }
}

/// Digest comparison of the corpus against its manifest, kept apart from the identities.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusCheck {
    pub entries: usize,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub corpus: CorpusCheck,
    pub stages: Vec<StageReport>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.corpus.mismatches.is_empty() && self.stages.iter().all(StageReport::passed)
    }

    pub fn records(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.stages.iter().flat_map(|s| s.records.iter())
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records().filter(|r| r.status == Status::Fail)
    }
}

/// Runs the requested stages in dependency order.
///
/// Every dependency of a requested stage must be requested too; see
/// [`with_dependencies`].
pub fn run_all(corpus: &Corpus, stages: &[Stage]) -> Result<RunReport, ReplayError> {
    for &s in stages {
        if let Some(&needs) = s.deps().iter().find(|d| !stages.contains(d)) {
            return Err(ReplayError::MissingDependency { stage: s, needs });
        }
    }
    let mut order = stages.to_vec();
    order.sort();
    order.dedup();
    let session = Session::new(corpus);
    let stages = order.into_iter().map(|s| run_stage(&session, s)).collect();
    Ok(RunReport {
        corpus: CorpusCheck {
            entries: corpus.len(),
            mismatches: corpus.verify_digests().iter().map(|e| e.to_string()).collect(),
        },
        stages,
    })
}

fn run_stage(session: &Session, stage: Stage) -> StageReport {
    let start = Instant::now();
    let mut rec = Recorder::default();
    match stage {
        Stage::Coefficients => coefficients::run(session, &mut rec),
        Stage::Elimination => elimination::run(session, &mut rec),
        Stage::Resultants => resultants::run(session, &mut rec),
        Stage::Cases => cases::run(session, &mut rec),
        Stage::Closing => closing::run(session, &mut rec),
        Stage::FixedB => fixed_b::run(session, &mut rec),
    }
    StageReport {
        stage,
        records: rec.records,
        millis: start.elapsed().as_millis(),
    }
}

/// Shared state of one run: the corpus and the derivation every later stage builds on.
pub(crate) struct Session<'a> {
    corpus: &'a Corpus,
    derived: OnceLock<Result<Derived, MvPolyError>>,
}

impl<'a> Session<'a> {
    fn new(corpus: &'a Corpus) -> Session<'a> {
        Session {
            corpus,
            derived: OnceLock::new(),
        }
    }

    pub(crate) fn get(&self, name: &str) -> Result<&'a MvPoly, MvPolyError> {
        self.corpus.get(name)
    }

    pub(crate) fn derived(&self) -> Result<&Derived, MvPolyError> {
        self.derived
            .get_or_init(derive_extension)
            .as_ref()
            .map_err(Clone::clone)
    }
}

pub(crate) enum Verdict {
    Holds,
    Fails(String),
    Display(String),
}

/// `Holds` when the two sides agree, otherwise a term-diff witness.
pub(crate) fn equal(lhs: &MvPoly, rhs: &MvPoly) -> Verdict {
    if lhs == rhs {
        Verdict::Holds
    } else {
        Verdict::Fails(lhs.diff_witness(rhs, 6))
    }
}

pub(crate) fn verdict(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Fails(witness())
    }
}

#[derive(Default)]
pub(crate) struct Recorder {
    records: Vec<IdentityRecord>,
}

impl Recorder {
    pub(crate) fn check(
        &mut self,
        id: &str,
        anchor: &str,
        f: impl FnOnce(&mut Vec<String>) -> Result<Verdict, MvPolyError>,
    ) {
        let start = Instant::now();
        let mut notes = Vec::new();
        let (status, witness) = match f(&mut notes) {
            Ok(Verdict::Holds) => (Status::Pass, None),
            Ok(Verdict::Fails(w)) => (Status::Fail, Some(w)),
            Ok(Verdict::Display(w)) => (Status::DisplayMismatch, Some(w)),
            Err(e) => (Status::Fail, Some(format!("error: {e}"))),
        };
        self.records.push(IdentityRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            millis: start.elapsed().as_millis(),
            witness,
            notes,
        });
    }
}

pub(crate) fn p(text: &str) -> MvPoly {
    crate::mvpoly::parse(text).expect("literal polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_names_round_trip() {
        for s in Stage::ALL {
            assert_eq!(s.name().parse::<Stage>().unwrap(), s);
        }
        assert!(matches!("foo".parse::<Stage>(), Err(ReplayError::UnknownStage(_))));
    }

    #[test]
    fn dependencies_expand_and_are_enforced() {
        assert_eq!(
            with_dependencies(&[Stage::Cases]),
            vec![Stage::Coefficients, Stage::Elimination, Stage::Resultants, Stage::Cases]
        );
        assert_eq!(with_dependencies(&[Stage::FixedB]), vec![Stage::FixedB]);
        let err = run_all(&Corpus::builtin(), &[Stage::Elimination]).unwrap_err();
        assert!(matches!(
            err,
            ReplayError::MissingDependency {
                stage: Stage::Elimination,
                needs: Stage::Coefficients
            }
        ));
    }
}
