use rayon::prelude::*;
use serde::Serialize;

use super::build::{Engine, WfOracle};
use super::tree::{Budget, EngineSemantics, Outcome};
use crate::checker::Status;
use crate::error::Result;
use crate::spec::EvaluatedSpec;
use crate::syntax::{GroundUniverse, Program, Query, Term};

/// What a ground atom's main tree must do.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    /// `A ∈ Snf`: must succeed.
    Succeed,
    /// `A ∉ St`: must fail.
    Fail,
    /// `A ∈ St ∖ Snf`: either is fine.
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomResult {
    pub atom: String,
    pub requirement: Requirement,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiCompletenessReport {
    pub semantics: EngineSemantics,
    pub depth: usize,
    pub budget: Budget,
    pub status: Status,
    pub checked: usize,
    /// Constrained atoms whose tree did what was required.
    pub decided: usize,
    /// Atoms of `St ∖ Snf`, on which nothing is required.
    pub unconstrained: usize,
    pub violations: Vec<AtomResult>,
    /// Constrained atoms whose tree floundered or hit the budget.
    pub skipped: Vec<AtomResult>,
    /// Atoms of `Snf ∖ St` left out under `allow_nonproper`.
    pub nonproper_skipped: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct SemiOptions {
    /// Skip `Snf ∖ St` instead of refusing a non-proper specification.
    pub allow_nonproper: bool,
    /// Restrict the atoms examined; all of `HB(d)` when `None`.
    pub atoms: Option<Vec<Term>>,
}

/// For each ground atom: a non-diverging main tree must succeed when the
/// atom is in `Snf` and fail when it is outside `St`.
pub fn check_semi_completeness_empirical(
    spec: &EvaluatedSpec,
    p: &Program,
    u: &GroundUniverse,
    budget: Budget,
    semantics: EngineSemantics,
    opts: &SemiOptions,
) -> Result<SemiCompletenessReport> {
    let mut report = SemiCompletenessReport {
        semantics,
        depth: u.depth(),
        budget,
        status: Status::Pass,
        checked: 0,
        decided: 0,
        unconstrained: 0,
        violations: Vec::new(),
        skipped: Vec::new(),
        nonproper_skipped: Vec::new(),
        notes: Vec::new(),
    };
    let nonproper: Vec<&Term> = spec.snf.difference(&spec.st).collect();
    if !nonproper.is_empty() && !opts.allow_nonproper {
        report.status = Status::Inconclusive;
        report.notes.push(format!(
            "refused: (Snf, St) is not proper ({} atoms in Snf ∖ St); completeness needs a proper pair",
            nonproper.len()
        ));
        return Ok(report);
    }
    let oracle = match semantics {
        EngineSemantics::Sls => Some(WfOracle::new(p, u)?),
        EngineSemantics::Sldnf => None,
    };
    let mut engine = Engine::new(p, semantics, budget);
    if let Some(o) = &oracle {
        engine = engine.with_oracle(o);
    }
    let atoms = match &opts.atoms {
        Some(a) => a.clone(),
        None => u.hb()?,
    };
    let results = atoms
        .par_iter()
        .map(|a| -> Result<Option<AtomResult>> {
            if spec.snf.contains(a) && !spec.st.contains(a) {
                return Ok(None);
            }
            let requirement = if spec.snf.contains(a) {
                Requirement::Succeed
            } else if !spec.st.contains(a) {
                Requirement::Fail
            } else {
                Requirement::Free
            };
            let t = engine.main_tree(&Query::atom(a.clone()))?;
            Ok(Some(AtomResult {
                atom: a.to_string(),
                requirement,
                outcome: t.outcome,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    for (a, r) in atoms.iter().zip(results) {
        let Some(r) = r else {
            report.nonproper_skipped.push(a.to_string());
            continue;
        };
        report.checked += 1;
        match (r.requirement, r.outcome) {
            (Requirement::Free, _) => report.unconstrained += 1,
            (_, Outcome::Floundered | Outcome::BudgetExhausted) => report.skipped.push(r),
            (Requirement::Succeed, Outcome::Success) | (Requirement::Fail, Outcome::Failed) => {
                report.decided += 1
            }
            _ => report.violations.push(r),
        }
    }
    if !report.nonproper_skipped.is_empty() {
        report.notes.push(format!(
            "{} atoms of Snf ∖ St skipped: semi-completeness does not deal with them",
            report.nonproper_skipped.len()
        ));
    }
    if !report.violations.is_empty() {
        report.status = Status::Fail;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_ground_atom, parse_program};
    use std::collections::BTreeSet;

    fn set(xs: &[&str]) -> BTreeSet<Term> {
        xs.iter().map(|a| parse_ground_atom(a).unwrap()).collect()
    }

    #[test]
    fn nonproper_is_refused_unless_allowed() {
        let p = parse_program("a.").unwrap();
        let u = GroundUniverse::for_program(&p, 1);
        let spec = EvaluatedSpec::from_sets(set(&["a"]), set(&[]), 1);
        let b = Budget::default();
        let r = check_semi_completeness_empirical(
            &spec,
            &p,
            &u,
            b,
            EngineSemantics::Sldnf,
            &SemiOptions::default(),
        )
        .unwrap();
        assert_eq!(r.status, Status::Inconclusive);
        let opts = SemiOptions {
            allow_nonproper: true,
            atoms: None,
        };
        let r = check_semi_completeness_empirical(&spec, &p, &u, b, EngineSemantics::Sldnf, &opts)
            .unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.nonproper_skipped, vec!["a"]);
    }

    #[test]
    fn wrong_program_is_caught() {
        let p = parse_program("a. b.").unwrap();
        let u = GroundUniverse::for_program(&p, 1);
        let spec = EvaluatedSpec::from_sets(set(&["a"]), set(&["a"]), 1);
        let r = check_semi_completeness_empirical(
            &spec,
            &p,
            &u,
            Budget::default(),
            EngineSemantics::Sldnf,
            &SemiOptions::default(),
        )
        .unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.violations[0].atom, "b");
        assert_eq!(r.decided, 1);
    }
}
