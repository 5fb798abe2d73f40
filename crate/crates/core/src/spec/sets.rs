//! Finite descriptions of Herbrand interpretations as set expressions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::oracles::least_model_bottom_up;
use crate::syntax::ast::collect_functions;
use crate::syntax::{GroundUniverse, Pred, Program, Sym, Term};

#[derive(Clone, PartialEq, Eq)]
pub enum SetExpr {
    Empty,
    Extensional(Vec<Term>),
    /// Least model of a named definite generator, optionally filtered to
    /// some predicates.
    LeastModel {
        name: String,
        program: Arc<Program>,
        filter: Vec<Pred>,
    },
    /// Complement within the `HB(d)` slice of one predicate.
    Complement(Pred, Box<SetExpr>),
    Union(Vec<SetExpr>),
    Intersect(Vec<SetExpr>),
}

impl fmt::Debug for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, name: &str, xs: &[SetExpr]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        }
        match self {
            SetExpr::Empty => f.write_str("empty"),
            SetExpr::Extensional(atoms) => {
                f.write_str("extensional {")?;
                for a in atoms {
                    write!(f, " {a}.")?;
                }
                f.write_str(" }")
            }
            SetExpr::LeastModel { name, filter, .. } => {
                write!(f, "model({name}")?;
                for p in filter {
                    write!(f, ", {p}")?;
                }
                f.write_str(")")
            }
            SetExpr::Complement(p, e) => write!(f, "complement({p}, {e})"),
            SetExpr::Union(xs) => list(f, "union", xs),
            SetExpr::Intersect(xs) => list(f, "intersect", xs),
        }
    }
}

/// Result of evaluating a set expression against a universe.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Evaluated {
    pub atoms: BTreeSet<Term>,
    /// Extensional atoms outside `HB(d)`, dropped with a warning.
    pub dropped: Vec<Term>,
}

/// Evaluation context caching generator least models.
#[derive(Default)]
pub struct SetEvaluator {
    models: HashMap<String, Arc<BTreeSet<Term>>>,
}

impl SetEvaluator {
    pub fn new() -> Self {
        SetEvaluator::default()
    }

    pub fn eval(&mut self, e: &SetExpr, u: &GroundUniverse) -> Result<Evaluated> {
        let mut dropped = Vec::new();
        let atoms = self.eval_into(e, u, &mut dropped)?;
        Ok(Evaluated { atoms, dropped })
    }

    fn eval_into(
        &mut self,
        e: &SetExpr,
        u: &GroundUniverse,
        dropped: &mut Vec<Term>,
    ) -> Result<BTreeSet<Term>> {
        Ok(match e {
            SetExpr::Empty => BTreeSet::new(),
            SetExpr::Extensional(atoms) => {
                let mut out = BTreeSet::new();
                for a in atoms {
                    if u.contains_atom(a) {
                        out.insert(a.clone());
                    } else if !dropped.contains(a) {
                        dropped.push(a.clone());
                    }
                }
                out
            }
            SetExpr::LeastModel {
                name,
                program,
                filter,
            } => {
                let model = self.generator_model(name, program, u)?;
                model
                    .iter()
                    .filter(|a| {
                        filter.is_empty() || Pred::of(a).is_some_and(|p| filter.contains(&p))
                    })
                    .filter(|a| u.contains_atom(a))
                    .cloned()
                    .collect()
            }
            SetExpr::Complement(p, inner) => {
                let inner = self.eval_into(inner, u, dropped)?;
                u.hb_pred(p)?
                    .into_iter()
                    .filter(|a| !inner.contains(a))
                    .collect()
            }
            SetExpr::Union(xs) => {
                let mut out = BTreeSet::new();
                for x in xs {
                    out.extend(self.eval_into(x, u, dropped)?);
                }
                out
            }
            SetExpr::Intersect(xs) => {
                let mut it = xs.iter();
                let mut out = match it.next() {
                    Some(x) => self.eval_into(x, u, dropped)?,
                    None => BTreeSet::new(),
                };
                for x in it {
                    let next = self.eval_into(x, u, dropped)?;
                    out.retain(|a| next.contains(a));
                }
                out
            }
        })
    }

    fn generator_model(
        &mut self,
        name: &str,
        p: &Program,
        u: &GroundUniverse,
    ) -> Result<Arc<BTreeSet<Term>>> {
        if let Some(m) = self.models.get(name) {
            return Ok(m.clone());
        }
        let mut gu = u.clone();
        gu.add_predicates(&p.predicates);
        gu.add_functions(&p.function_symbols());
        let m = Arc::new(least_model_bottom_up(p, &gu)?);
        self.models.insert(name.to_string(), m.clone());
        Ok(m)
    }
}

pub fn eval_spec_set(e: &SetExpr, u: &GroundUniverse) -> Result<Evaluated> {
    SetEvaluator::new().eval(e, u)
}

impl SetExpr {
    /// Function symbols and predicates an expression mentions, for sizing
    /// the universe it is evaluated in. Generator auxiliaries are not
    /// included unless selected by a filter.
    pub fn signature(&self, funcs: &mut BTreeMap<Sym, usize>, preds: &mut BTreeMap<Sym, usize>) {
        match self {
            SetExpr::Empty => {}
            SetExpr::Extensional(atoms) => {
                for a in atoms {
                    if let Some((n, k)) = a.functor() {
                        preds.entry(n.clone()).or_insert(k);
                    }
                    for t in a.args() {
                        collect_functions(t, funcs);
                    }
                }
            }
            SetExpr::LeastModel {
                program, filter, ..
            } => {
                for (s, a) in program.function_symbols() {
                    funcs.entry(s).or_insert(a);
                }
                for p in filter {
                    preds.entry(p.name.clone()).or_insert(p.arity);
                }
            }
            SetExpr::Complement(p, e) => {
                preds.entry(p.name.clone()).or_insert(p.arity);
                e.signature(funcs, preds);
            }
            SetExpr::Union(xs) | SetExpr::Intersect(xs) => {
                xs.iter().for_each(|x| x.signature(funcs, preds))
            }
        }
    }
}
