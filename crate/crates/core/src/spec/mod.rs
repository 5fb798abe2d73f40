//! Approximate specifications `(Snf, St)`, four-valued interpretations and
//! level mappings.

pub mod file;
pub mod four;
pub mod level;
pub mod sets;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

pub use file::{parse_spec, read_spec};
pub use four::{make_i4_compl, make_i4_corr, FourValuedInterp, PrimedPair, Truth4};
pub use level::{LevelExpr, LevelMap, LevelValue};
pub use sets::{eval_spec_set, Evaluated, SetEvaluator, SetExpr};

use crate::error::Result;
use crate::syntax::{GroundUniverse, Program, Term, UniverseDecl};

/// A specification as written: set expressions for `Snf` and `St`, plus the
/// universe declarations, generators and level mapping that accompany them.
#[derive(Clone, Debug)]
pub struct Spec {
    pub universe: UniverseDecl,
    pub depth: Option<usize>,
    pub generators: BTreeMap<String, Arc<Program>>,
    pub snf: SetExpr,
    pub st: SetExpr,
    pub level: Option<LevelMap>,
}

impl Default for Spec {
    fn default() -> Self {
        Spec {
            universe: UniverseDecl::default(),
            depth: None,
            generators: BTreeMap::new(),
            snf: SetExpr::Empty,
            st: SetExpr::Empty,
            level: None,
        }
    }
}

impl Spec {
    pub fn new(snf: SetExpr, st: SetExpr) -> Self {
        Spec {
            snf,
            st,
            ..Spec::default()
        }
    }

    /// The universe for checking `p` against this specification: symbols
    /// and predicates of both, with the declared sorts and domains.
    pub fn universe_for(&self, p: &Program, depth: usize, cap: usize) -> Result<GroundUniverse> {
        let mut funcs = p.function_symbols();
        let mut preds = p.predicates.clone();
        self.snf.signature(&mut funcs, &mut preds);
        self.st.signature(&mut funcs, &mut preds);
        let mut u = GroundUniverse::new(funcs, preds, depth).with_cap(cap);
        u.apply_decl(&self.universe)?;
        Ok(u)
    }

    pub fn evaluate(&self, u: &GroundUniverse) -> Result<EvaluatedSpec> {
        let mut ev = SetEvaluator::new();
        let snf = ev.eval(&self.snf, u)?;
        let st = ev.eval(&self.st, u)?;
        let mut dropped = snf.dropped;
        for a in st.dropped {
            if !dropped.contains(&a) {
                dropped.push(a);
            }
        }
        Ok(EvaluatedSpec {
            snf: snf.atoms,
            st: st.atoms,
            dropped,
            depth: u.depth(),
        })
    }
}

/// `(Snf, St)` evaluated to finite sets inside `HB(d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvaluatedSpec {
    pub snf: BTreeSet<Term>,
    pub st: BTreeSet<Term>,
    pub dropped: Vec<Term>,
    pub depth: usize,
}

impl EvaluatedSpec {
    pub fn from_sets(snf: BTreeSet<Term>, st: BTreeSet<Term>, depth: usize) -> Self {
        EvaluatedSpec {
            snf,
            st,
            dropped: Vec::new(),
            depth,
        }
    }

    pub fn is_proper(&self) -> bool {
        self.snf.is_subset(&self.st)
    }

    pub fn i4_corr(&self, hb: &[Term]) -> FourValuedInterp {
        make_i4_corr(&self.snf, &self.st, hb)
    }

    pub fn i4_compl(&self, hb: &[Term]) -> FourValuedInterp {
        make_i4_compl(&self.snf, &self.st, hb)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Properness {
    pub proper: bool,
    /// Up to `k` atoms of `Snf ∖ St`.
    pub witnesses: Vec<Term>,
    pub violations: usize,
}

pub fn check_proper(spec: &EvaluatedSpec, k: usize) -> Properness {
    let bad: Vec<&Term> = spec.snf.difference(&spec.st).collect();
    Properness {
        proper: bad.is_empty(),
        witnesses: bad.iter().take(k).map(|t| (*t).clone()).collect(),
        violations: bad.len(),
    }
}
