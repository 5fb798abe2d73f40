//! Ground instances of clauses within a [`GroundUniverse`].
//!
//! Instances are found by a backtracking join: positive body literals may be
//! drawn from an indexed [`AtomStore`], remaining variables are enumerated
//! over their candidate ranges, and every literal is tested as soon as it
//! becomes ground.

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;
use std::sync::Arc;

use indexmap::IndexSet;

use super::ast::{Clause, Program};
use super::term::{Pred, Subst, Term, Var};
use super::universe::GroundUniverse;
use crate::error::{Error, Result};

/// A set of ground atoms indexed by predicate and by argument value.
#[derive(Clone, Debug, Default)]
pub struct AtomStore {
    atoms: IndexSet<Term>,
    by_pred: HashMap<Pred, Vec<usize>>,
    by_arg: HashMap<(Pred, usize, Term), Vec<usize>>,
}

impl AtomStore {
    pub fn new<'a>(atoms: impl IntoIterator<Item = &'a Term>) -> Self {
        let mut s = AtomStore::default();
        for a in atoms {
            s.insert(a.clone());
        }
        s
    }

    pub fn insert(&mut self, a: Term) -> bool {
        let Some(pred) = Pred::of(&a) else {
            return false;
        };
        let (i, fresh) = self.atoms.insert_full(a);
        if fresh {
            let atom = &self.atoms[i];
            for (j, t) in atom.args().iter().enumerate() {
                self.by_arg
                    .entry((pred.clone(), j, t.clone()))
                    .or_default()
                    .push(i);
            }
            self.by_pred.entry(pred).or_default().push(i);
        }
        fresh
    }

    pub fn contains(&self, a: &Term) -> bool {
        self.atoms.contains(a)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.atoms.iter()
    }

    /// Atoms that may match `pattern`, narrowed through the most selective
    /// ground argument.
    pub fn candidates(&self, pattern: &Term) -> Vec<&Term> {
        let Some(pred) = Pred::of(pattern) else {
            return Vec::new();
        };
        let mut best: Option<&Vec<usize>> = self.by_pred.get(&pred);
        for (j, t) in pattern.args().iter().enumerate() {
            if t.is_ground() {
                match self.by_arg.get(&(pred.clone(), j, t.clone())) {
                    Some(v) => {
                        if best.is_none_or(|b| v.len() < b.len()) {
                            best = Some(v);
                        }
                    }
                    None => return Vec::new(),
                }
            }
        }
        best.map(|v| v.iter().map(|&i| &self.atoms[i]).collect())
            .unwrap_or_default()
    }
}

/// Position of a literal inside a clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Head,
    Pos(usize),
    Neg(usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    /// Partial instances discarded because an atom left `HB(d)`.
    pub left_universe: u64,
}

/// Instance search for one clause.
pub struct InstanceSearch<'a> {
    universe: &'a GroundUniverse,
    clause: &'a Clause,
    sources: Vec<Option<&'a AtomStore>>,
    vars: Vec<Var>,
    ranges: Vec<Option<Arc<[Term]>>>,
    pub stats: SearchStats,
}

impl<'a> InstanceSearch<'a> {
    pub fn new(universe: &'a GroundUniverse, clause: &'a Clause) -> Self {
        let vars = clause.vars();
        InstanceSearch {
            universe,
            clause,
            sources: vec![None; clause.body.len()],
            ranges: vec![None; vars.len()],
            vars,
            stats: SearchStats::default(),
        }
    }

    /// Draw every positive body literal from `store`.
    pub fn with_positive_source(mut self, store: &'a AtomStore) -> Self {
        for (i, l) in self.clause.body.iter().enumerate() {
            if l.positive {
                self.sources[i] = Some(store);
            }
        }
        self
    }

    /// Draw body literal `i` from `store`.
    pub fn with_source(mut self, i: usize, store: &'a AtomStore) -> Self {
        self.sources[i] = Some(store);
        self
    }

    fn atom(&self, k: usize) -> (&Term, Role) {
        if k == 0 {
            (&self.clause.head, Role::Head)
        } else {
            let l = &self.clause.body[k - 1];
            let role = if l.positive {
                Role::Pos(k - 1)
            } else {
                Role::Neg(k - 1)
            };
            (&l.atom, role)
        }
    }

    fn range(&mut self, vi: usize) -> Result<Arc<[Term]>> {
        if let Some(r) = &self.ranges[vi] {
            return Ok(r.clone());
        }
        let v = &self.vars[vi];
        let mut best: Option<Arc<[Term]>> = None;
        let mut max_depth = self.universe.depth();
        for k in 0..=self.clause.body.len() {
            let atom = self.atom(k).0;
            let Some(pred) = Pred::of(atom) else { continue };
            for (i, arg) in atom.args().iter().enumerate() {
                let mut path = Vec::new();
                for p in var_paths(arg, v, &mut path) {
                    max_depth = max_depth.min(self.universe.depth().saturating_sub(p.len()));
                    if let Some(proj) = self.universe.projection(&pred, i, &p) {
                        if best.as_ref().is_none_or(|b| proj.len() < b.len()) {
                            best = Some(proj);
                        }
                    }
                }
            }
        }
        let r = match best {
            Some(b) => b,
            None if max_depth == 0 => Arc::from(Vec::new()),
            None => self.universe.hu(max_depth)?,
        };
        self.ranges[vi] = Some(r.clone());
        Ok(r)
    }

    /// Upper bound on the number of instances when every variable is
    /// enumerated over its range.
    pub fn estimate(&mut self) -> Result<u128> {
        let mut n = 1u128;
        for vi in 0..self.vars.len() {
            n = n.saturating_mul(self.range(vi)?.len() as u128);
        }
        Ok(n)
    }

    /// Enumerates instances extending `init`. `filter` sees each atom once it
    /// is ground (and inside the universe); `visit` receives each complete
    /// grounding substitution and may stop the search.
    pub fn run(
        &mut self,
        init: Subst,
        filter: &mut dyn FnMut(Role, &Term) -> bool,
        visit: &mut dyn FnMut(&Subst) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let n = self.clause.body.len() + 1;
        let checked = vec![false; n];
        self.step(init, checked, filter, visit)
    }

    fn step(
        &mut self,
        subst: Subst,
        mut checked: Vec<bool>,
        filter: &mut dyn FnMut(Role, &Term) -> bool,
        visit: &mut dyn FnMut(&Subst) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.stats.nodes += 1;
        for k in 0..checked.len() {
            if checked[k] {
                continue;
            }
            let (atom, role) = self.atom(k);
            let t = atom.apply(&subst);
            if t.is_ground() {
                if !self.universe.contains_atom(&t) {
                    self.stats.left_universe += 1;
                    return Ok(ControlFlow::Continue(()));
                }
                if let Role::Pos(i) = role {
                    if let Some(src) = self.sources[i] {
                        if !src.contains(&t) {
                            return Ok(ControlFlow::Continue(()));
                        }
                    }
                }
                if !filter(role, &t) {
                    return Ok(ControlFlow::Continue(()));
                }
                checked[k] = true;
            } else if !self.universe.may_fit(&t) {
                self.stats.left_universe += 1;
                return Ok(ControlFlow::Continue(()));
            }
        }

        for i in 0..self.clause.body.len() {
            if checked[i + 1] {
                continue;
            }
            if let Some(src) = self.sources[i] {
                let pattern = self.clause.body[i].atom.apply(&subst);
                for g in src.candidates(&pattern) {
                    let mut s = subst.clone();
                    if pattern.match_ground(g, &mut s) {
                        let flow = self.step(s, checked.clone(), filter, visit)?;
                        if flow.is_break() {
                            return Ok(flow);
                        }
                    }
                }
                return Ok(ControlFlow::Continue(()));
            }
        }

        let next = (0..self.vars.len()).find(|&vi| !subst.contains_key(&self.vars[vi]));
        match next {
            None => Ok(visit(&subst)),
            Some(vi) => {
                let range = self.range(vi)?;
                let v = self.vars[vi].clone();
                for t in range.iter() {
                    let mut s = subst.clone();
                    s.insert(v.clone(), t.clone());
                    let flow = self.step(s, checked.clone(), filter, visit)?;
                    if flow.is_break() {
                        return Ok(flow);
                    }
                }
                Ok(ControlFlow::Continue(()))
            }
        }
    }
}

fn var_paths(t: &Term, v: &Var, path: &mut Vec<usize>) -> Vec<Vec<usize>> {
    match t {
        Term::Var(w) if w == v => vec![path.clone()],
        Term::Var(_) => vec![],
        Term::App(_, args) => {
            let mut out = Vec::new();
            for (j, a) in args.iter().enumerate() {
                path.push(j);
                out.extend(var_paths(a, v, path));
                path.pop();
            }
            out
        }
    }
}

/// All ground instances of `clause` inside the universe, in enumeration order.
pub fn ground_clause(clause: &Clause, u: &GroundUniverse) -> Result<Vec<Clause>> {
    let mut search = InstanceSearch::new(u, clause);
    let est = search.estimate()?;
    if est > u.cap() as u128 {
        return Err(Error::UniverseTooLarge {
            what: format!("instances of `{clause}`"),
            size: est,
            cap: u.cap(),
        });
    }
    let mut out = Vec::new();
    let _ = search.run(Subst::new(), &mut |_, _| true, &mut |s| {
        out.push(clause.apply(s));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// `ground(P, d)`: every instance of every clause whose terms all lie in
/// `HU(d)`, deduplicated, in clause order.
pub fn ground_program(p: &Program, u: &GroundUniverse) -> Result<Vec<Clause>> {
    let mut seen = IndexSet::new();
    for c in &p.clauses {
        for g in ground_clause(c, u)? {
            seen.insert(g);
        }
    }
    Ok(seen.into_iter().collect())
}

/// Ground atoms occurring in a set of ground clauses.
pub fn atoms_of(clauses: &[Clause]) -> BTreeSet<Term> {
    clauses.iter().flat_map(|c| c.atoms().cloned()).collect()
}
