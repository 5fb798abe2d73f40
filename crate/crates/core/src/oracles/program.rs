use std::collections::BTreeSet;

use indexmap::IndexSet;

use crate::syntax::{Clause, Term};

pub type AtomId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub head: AtomId,
    pub pos: Vec<AtomId>,
    pub neg: Vec<AtomId>,
}

/// A finite ground program over an interned atom table. The table holds
/// every atom of the rules plus any extra base atoms, so atoms without
/// rules are represented too.
#[derive(Clone, Debug, Default)]
pub struct GroundProgram {
    atoms: IndexSet<Term>,
    pub rules: Vec<Rule>,
    by_head: Vec<Vec<usize>>,
}

impl GroundProgram {
    pub fn new(clauses: &[Clause], base: impl IntoIterator<Item = Term>) -> Self {
        let mut atoms: IndexSet<Term> = base.into_iter().collect();
        let mut rules = Vec::with_capacity(clauses.len());
        for c in clauses {
            debug_assert!(c.is_ground());
            let head = atoms.insert_full(c.head.clone()).0 as AtomId;
            let mut pos = Vec::new();
            let mut neg = Vec::new();
            for l in &c.body {
                let id = atoms.insert_full(l.atom.clone()).0 as AtomId;
                if l.positive {
                    pos.push(id);
                } else {
                    neg.push(id);
                }
            }
            rules.push(Rule { head, pos, neg });
        }
        let mut by_head = vec![Vec::new(); atoms.len()];
        for (i, r) in rules.iter().enumerate() {
            by_head[r.head as usize].push(i);
        }
        GroundProgram {
            atoms,
            rules,
            by_head,
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, id: AtomId) -> &Term {
        &self.atoms[id as usize]
    }

    pub fn id(&self, a: &Term) -> Option<AtomId> {
        self.atoms.get_index_of(a).map(|i| i as AtomId)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Term> {
        self.atoms.iter()
    }

    pub fn rules_for(&self, id: AtomId) -> &[usize] {
        &self.by_head[id as usize]
    }

    pub fn is_definite(&self) -> bool {
        self.rules.iter().all(|r| r.neg.is_empty())
    }

    pub fn to_set(&self, bits: &[bool]) -> BTreeSet<Term> {
        bits.iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(i, _)| self.atoms[i].clone())
            .collect()
    }

    pub fn to_bits(&self, set: &BTreeSet<Term>) -> Vec<bool> {
        self.atoms.iter().map(|a| set.contains(a)).collect()
    }

    /// Least model of the rules kept by `keep`, ignoring their negative
    /// literals. Linear-time propagation over unsatisfied-premise counters.
    pub fn least_model_where(&self, keep: impl Fn(&Rule) -> bool) -> Vec<bool> {
        let n = self.atoms.len();
        let mut model = vec![false; n];
        let mut waiting: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut missing = vec![0usize; self.rules.len()];
        let mut queue = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            if !keep(r) {
                missing[i] = usize::MAX;
                continue;
            }
            let mut distinct = r.pos.clone();
            distinct.sort_unstable();
            distinct.dedup();
            missing[i] = distinct.len();
            for &b in &distinct {
                waiting[b as usize].push(i);
            }
            if distinct.is_empty() && !model[r.head as usize] {
                model[r.head as usize] = true;
                queue.push(r.head);
            }
        }
        while let Some(a) = queue.pop() {
            for &ri in &waiting[a as usize] {
                if missing[ri] == usize::MAX {
                    continue;
                }
                missing[ri] -= 1;
                if missing[ri] == 0 {
                    let h = self.rules[ri].head as usize;
                    if !model[h] {
                        model[h] = true;
                        queue.push(h as AtomId);
                    }
                }
            }
        }
        model
    }
}
