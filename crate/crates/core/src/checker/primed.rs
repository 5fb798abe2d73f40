use std::ops::ControlFlow;

use rayon::prelude::*;

use super::verdict::{CheckOptions, Verdict, Witness, WitnessKind};
use crate::error::Result;
use crate::spec::EvaluatedSpec;
use crate::syntax::ground::{InstanceSearch, Role};
use crate::syntax::{AtomStore, Clause, GroundUniverse, Program, Subst};

/// Ground instances of `c` violating `St ∪ Snf′ ⊨ c′`: positive body atoms
/// in `St`, negated atoms outside `Snf`, head outside `St`. At most `limit`
/// instances are returned, together with the total count.
pub fn primed_violations(
    c: &Clause,
    spec: &EvaluatedSpec,
    st: &AtomStore,
    u: &GroundUniverse,
    limit: usize,
) -> Result<(Vec<Clause>, u64)> {
    let mut found = Vec::new();
    let mut total = 0u64;
    let mut search = InstanceSearch::new(u, c).with_positive_source(st);
    let _ = search.run(
        Subst::new(),
        &mut |role, a| match role {
            Role::Head => !spec.st.contains(a),
            Role::Neg(_) => !spec.snf.contains(a),
            Role::Pos(_) => true,
        },
        &mut |s| {
            total += 1;
            if found.len() < limit {
                found.push(c.apply(s));
            }
            ControlFlow::Continue(())
        },
    )?;
    Ok((found, total))
}

/// Condition 1 of both correctness checks: `St ∪ Snf′ ⊨ P′` over
/// `ground(P, d)`.
pub fn check_primed_model(
    condition: &str,
    spec: &EvaluatedSpec,
    p: &Program,
    u: &GroundUniverse,
    opts: &CheckOptions,
) -> Result<Verdict> {
    let st = AtomStore::new(&spec.st);
    let per_clause = p
        .clauses
        .par_iter()
        .map(|c| primed_violations(c, spec, &st, u, opts.witness_cap))
        .collect::<Result<Vec<_>>>()?;
    let mut v = Verdict::new(condition, u.depth());
    v.checked = p.clauses.len() as u64;
    let mut witnesses = Vec::new();
    for (inst, n) in per_clause {
        v.violations += n;
        witnesses.extend(
            inst.iter()
                .map(|c| Witness::new(WitnessKind::Instance, c.to_string())),
        );
    }
    Ok(v.finish(witnesses, opts.witness_cap))
}
