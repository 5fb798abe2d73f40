use serde::Serialize;

use super::coverage::check_cover;
use super::primed::check_primed_model;
use super::verdict::{CheckOptions, Status, Verdict};
use super::{KS_COVERAGE, KS_PRIMED, WFS_LEVELS, WFS_PRIMED};
use crate::error::{Error, Result};
use crate::spec::{EvaluatedSpec, LevelMap};
use crate::syntax::{GroundUniverse, Program};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Ks,
    Wfs,
}

/// The two sufficient conditions for correctness and their conjunction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrectnessReport {
    pub semantics: Semantics,
    pub depth: usize,
    pub condition1: Verdict,
    pub condition2: Verdict,
    pub overall: Status,
    /// What a pass licenses, stated only when both conditions pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consequence: Option<String>,
}

impl CorrectnessReport {
    fn new(semantics: Semantics, depth: usize, c1: Verdict, c2: Verdict) -> Self {
        let overall = Status::all([c1.status, c2.status]);
        let consequence = (overall == Status::Pass).then(|| match semantics {
            Semantics::Ks => format!(
                "correct under KS at depth {depth}; hence SLDNF-semi-complete for ground queries"
            ),
            Semantics::Wfs => format!(
                "correct under WFS at depth {depth}; hence SLS-semi-complete for ground queries"
            ),
        });
        CorrectnessReport {
            semantics,
            depth,
            condition1: c1,
            condition2: c2,
            overall,
            consequence,
        }
    }
}

/// Correctness under the Kunen semantics: `St ∪ Snf′ ⊨ P′` and every atom of
/// `Snf` covered.
pub fn check_correctness_ks(
    spec: &EvaluatedSpec,
    p: &Program,
    u: &GroundUniverse,
    opts: &CheckOptions,
) -> Result<CorrectnessReport> {
    let c1 = check_primed_model(KS_PRIMED, spec, p, u, opts)?;
    let c2 = check_cover(KS_COVERAGE, spec, p, u, None, opts)?;
    Ok(CorrectnessReport::new(Semantics::Ks, u.depth(), c1, c2))
}

/// Correctness under the well-founded semantics: condition 1 as for KS, and
/// every atom of `Snf` covered by an instance whose positive body atoms have
/// strictly smaller level.
pub fn check_correctness_wfs(
    spec: &EvaluatedSpec,
    p: &Program,
    u: &GroundUniverse,
    level: &LevelMap,
    opts: &CheckOptions,
) -> Result<CorrectnessReport> {
    if let Some((_, e)) = level.undefined_on(&spec.snf).into_iter().next() {
        return Err(e);
    }
    let c1 = check_primed_model(WFS_PRIMED, spec, p, u, opts)?;
    let c2 = check_cover(WFS_LEVELS, spec, p, u, Some(level), opts)?;
    Ok(CorrectnessReport::new(Semantics::Wfs, u.depth(), c1, c2))
}

/// Level map required for the WFS check.
pub fn require_level(level: Option<&LevelMap>) -> Result<&LevelMap> {
    level.ok_or_else(|| Error::Spec("the WFS check needs a [level] section".into()))
}
