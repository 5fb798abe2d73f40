use std::collections::BTreeSet;

use serde::Serialize;

use super::primed::check_primed_model;
use super::verdict::{CheckOptions, Status, Verdict, Witness, WitnessKind};
use super::STABLE;
use crate::error::Result;
use crate::oracles::{stable_models, GroundProgram};
use crate::spec::EvaluatedSpec;
use crate::syntax::{ground_program, GroundUniverse, Program, Term};

/// The implication `Snf ⊆ I ⇒ I ⊆ St` instantiated for one stable model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelInstance {
    pub model: Vec<String>,
    pub contains_snf: bool,
    pub within_st: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableReport {
    /// The primed-model hypothesis.
    pub hypothesis: Verdict,
    pub verdict: Verdict,
    pub models: Vec<ModelInstance>,
}

fn render(m: &BTreeSet<Term>) -> String {
    let items: Vec<String> = m.iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// For every stable model `I` of `ground(P, d)`: if `Snf ⊆ I` then
/// `I ⊆ St`. Inconclusive when `St ∪ Snf′ ⊨ P′` fails.
pub fn check_stable_proposition(
    spec: &EvaluatedSpec,
    p: &Program,
    u: &GroundUniverse,
    opts: &CheckOptions,
) -> Result<StableReport> {
    let hypothesis = check_primed_model(super::KS_PRIMED, spec, p, u, opts)?;
    if hypothesis.status != Status::Pass {
        return Ok(StableReport {
            verdict: Verdict::inconclusive(
                STABLE,
                u.depth(),
                "hypothesis St ∪ Snf′ ⊨ P′ does not hold",
            ),
            hypothesis,
            models: Vec::new(),
        });
    }
    let gp = GroundProgram::new(&ground_program(p, u)?, std::iter::empty());
    let models = stable_models(&gp, opts.stable_cap)?;
    let mut verdict = Verdict::new(STABLE, u.depth());
    verdict.checked = models.len() as u64;
    let mut witnesses = Vec::new();
    let mut out = Vec::new();
    for m in &models {
        let contains_snf = spec.snf.is_subset(m);
        let within_st = m.is_subset(&spec.st);
        let holds = !contains_snf || within_st;
        if !holds {
            let extra: BTreeSet<Term> = m.difference(&spec.st).cloned().collect();
            witnesses.push(
                Witness::new(WitnessKind::StableModel, render(m))
                    .with_note(format!("outside St: {}", render(&extra))),
            );
        }
        out.push(ModelInstance {
            model: m.iter().map(|t| t.to_string()).collect(),
            contains_snf,
            within_st,
            holds,
        });
    }
    if models.is_empty() {
        verdict.notes.push("no stable models".into());
    }
    Ok(StableReport {
        hypothesis,
        verdict: verdict.finish(witnesses, opts.witness_cap),
        models: out,
    })
}
