use std::ops::ControlFlow;

use rayon::prelude::*;

use super::verdict::{CheckOptions, Verdict, Witness, WitnessKind};
use crate::error::Result;
use crate::spec::{EvaluatedSpec, LevelMap, LevelValue};
use crate::syntax::ground::{InstanceSearch, Role};
use crate::syntax::{AtomStore, Clause, GroundUniverse, Pred, Program, Subst, Term};

/// Result of searching one clause for a covering instance of an atom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cover {
    /// First covering instance in enumeration order.
    pub witness: Option<Clause>,
    /// Partial instances discarded for leaving `HU(d)`.
    pub left_universe: u64,
}

/// Searches ground instances of `c` with head `a` whose positive body atoms
/// lie in `Snf` and whose negated atoms lie outside `St`. With a level map,
/// positive body atoms must also have a level strictly below `a`'s.
pub fn covered_by(
    a: &Term,
    c: &Clause,
    spec: &EvaluatedSpec,
    snf: &AtomStore,
    u: &GroundUniverse,
    level: Option<(&LevelMap, &LevelValue)>,
) -> Result<Cover> {
    let mut init = Subst::new();
    if !c.head.match_ground(a, &mut init) {
        return Ok(Cover::default());
    }
    let mut witness = None;
    let mut search = InstanceSearch::new(u, c).with_positive_source(snf);
    let _ = search.run(
        init,
        &mut |role, b| match role {
            Role::Head => true,
            Role::Neg(_) => !spec.st.contains(b),
            Role::Pos(_) => match level {
                None => true,
                Some((l, top)) => l.eval_level(b).is_ok_and(|v| &v < top),
            },
        },
        &mut |s| {
            witness = Some(c.apply(s));
            ControlFlow::Break(())
        },
    )?;
    Ok(Cover {
        witness,
        left_universe: search.stats.left_universe,
    })
}

/// First covering instance of `a` by clause `c` w.r.t. `(Snf, St)`.
pub fn covered(
    a: &Term,
    c: &Clause,
    spec: &EvaluatedSpec,
    u: &GroundUniverse,
) -> Result<Option<Clause>> {
    let snf = AtomStore::new(&spec.snf);
    Ok(covered_by(a, c, spec, &snf, u, None)?.witness)
}

/// How an atom of `Snf` fared against the whole program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum AtomCover {
    Covered(Clause),
    /// Covered, but by no instance with a level decrease.
    NoDecrease {
        covering: Clause,
        left_universe: bool,
    },
    Uncovered {
        left_universe: bool,
    },
}

pub(crate) fn cover_atom(
    a: &Term,
    p: &Program,
    spec: &EvaluatedSpec,
    snf: &AtomStore,
    u: &GroundUniverse,
    level: Option<&LevelMap>,
) -> Result<AtomCover> {
    let Some(pred) = Pred::of(a) else {
        return Ok(AtomCover::Uncovered {
            left_universe: false,
        });
    };
    let top = level.map(|l| l.eval_level(a)).transpose()?;
    let mut left = false;
    let mut plain: Option<Clause> = None;
    for (_, c) in p.clauses_for(&pred) {
        let cover = covered_by(a, c, spec, snf, u, level.zip(top.as_ref()))?;
        left |= cover.left_universe > 0;
        if let Some(w) = cover.witness {
            return Ok(AtomCover::Covered(w));
        }
        if level.is_some() && plain.is_none() {
            plain = covered_by(a, c, spec, snf, u, None)?.witness;
        }
    }
    Ok(match plain {
        Some(covering) => AtomCover::NoDecrease {
            covering,
            left_universe: left,
        },
        None => AtomCover::Uncovered {
            left_universe: left,
        },
    })
}

pub(crate) const FAIL_AT_DEPTH: &str = "fail-at-depth";
pub(crate) const STRUCTURAL: &str = "structural";

/// Every atom of `Snf` is covered by some clause; with a level map, by an
/// instance whose positive body atoms have strictly smaller levels.
pub(crate) fn check_cover(
    condition: &str,
    spec: &EvaluatedSpec,
    p: &Program,
    u: &GroundUniverse,
    level: Option<&LevelMap>,
    opts: &CheckOptions,
) -> Result<Verdict> {
    let snf = AtomStore::new(&spec.snf);
    let atoms: Vec<&Term> = spec.snf.iter().collect();
    let results = atoms
        .par_iter()
        .map(|a| cover_atom(a, p, spec, &snf, u, level))
        .collect::<Result<Vec<_>>>()?;
    let mut v = Verdict::new(condition, u.depth());
    v.checked = atoms.len() as u64;
    let note = |left: bool| if left { FAIL_AT_DEPTH } else { STRUCTURAL };
    let mut witnesses = Vec::new();
    for (a, r) in atoms.iter().zip(results) {
        match r {
            AtomCover::Covered(_) => {}
            AtomCover::Uncovered { left_universe } => witnesses.push(
                Witness::new(WitnessKind::Uncovered, a.to_string()).with_note(note(left_universe)),
            ),
            AtomCover::NoDecrease {
                covering,
                left_universe,
            } => witnesses.push(
                Witness::new(WitnessKind::LevelViolation, a.to_string()).with_note(format!(
                    "{}; covered without level decrease by `{covering}`",
                    note(left_universe)
                )),
            ),
        }
    }
    Ok(v.finish(witnesses, opts.witness_cap))
}

/// Condition 2 of the KS check: every atom of `Snf` is covered.
pub fn check_coverage(
    spec: &EvaluatedSpec,
    p: &Program,
    u: &GroundUniverse,
    opts: &CheckOptions,
) -> Result<Verdict> {
    check_cover(super::KS_COVERAGE, spec, p, u, None, opts)
}
