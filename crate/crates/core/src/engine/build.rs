use std::collections::HashMap;
use std::sync::Mutex;

use super::tree::{
    Budget, Decision, Edge, EngineSemantics, MainTree, Node, NodeStatus, Outcome, Subsidiary,
};
use super::unify::mgu;
use crate::error::{Error, Result};
use crate::oracles::{well_founded_model, GroundProgram, ThreeValuedInterp, Truth3};
use crate::syntax::term::RENAME_STRIDE;
use crate::syntax::{
    ground_program, Clause, GroundUniverse, Literal, Pred, Program, Query, Subst, Term, Var,
};

/// Well-founded model of `ground(P, d)`, consulted by SLS for ground goals
/// whose subsidiary trees exceed the budget.
#[derive(Clone, Debug)]
pub struct WfOracle {
    universe: GroundUniverse,
    gp: GroundProgram,
    model: ThreeValuedInterp,
}

impl WfOracle {
    pub fn new(p: &Program, u: &GroundUniverse) -> Result<Self> {
        let gp = GroundProgram::new(&ground_program(p, u)?, std::iter::empty());
        let model = well_founded_model(&gp);
        Ok(WfOracle {
            universe: u.clone(),
            gp,
            model,
        })
    }

    /// Value of a ground atom of `HB(d)`; `None` outside it.
    pub fn value(&self, a: &Term) -> Option<Truth3> {
        if !self.universe.contains_atom(a) {
            return None;
        }
        Some(if self.model.true_set.contains(a) {
            Truth3::T
        } else if self.model.false_set.contains(a) || self.gp.id(a).is_none() {
            Truth3::F
        } else {
            Truth3::U
        })
    }

    pub fn model(&self) -> &ThreeValuedInterp {
        &self.model
    }
}

#[derive(Clone, Debug)]
struct Pending {
    parent: Option<usize>,
    depth: usize,
    goal: Vec<Literal>,
    answer: Query,
    edge: Option<Edge>,
}

/// Builds main trees under the leftmost selection rule. Subsidiary results
/// for ground atoms are memoised per remaining rank, so one engine may be
/// shared by many queries.
pub struct Engine<'a> {
    program: &'a Program,
    semantics: EngineSemantics,
    budget: Budget,
    oracle: Option<&'a WfOracle>,
    cache: Mutex<HashMap<(Term, usize), Subsidiary>>,
}

impl<'a> Engine<'a> {
    pub fn new(program: &'a Program, semantics: EngineSemantics, budget: Budget) -> Self {
        Engine {
            program,
            semantics,
            budget,
            oracle: None,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Attach the well-founded oracle; only SLS consults it.
    pub fn with_oracle(mut self, oracle: &'a WfOracle) -> Self {
        self.oracle = Some(oracle);
        self
    }

    pub fn semantics(&self) -> EngineSemantics {
        self.semantics
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    fn check_arity(&self, q: &Query) -> Result<()> {
        for l in q.literals() {
            let Some((name, found)) = l.atom.functor() else {
                return Err(Error::Syntax {
                    line: 1,
                    col: 1,
                    msg: format!("`{}` is not an atom", l.atom),
                });
            };
            if let Some(&expected) = self.program.predicates.get(name) {
                if expected != found {
                    return Err(Error::QueryArity {
                        name: name.to_string(),
                        expected,
                        found,
                    });
                }
            }
        }
        Ok(())
    }

    fn oracle_value(&self, a: &Term) -> Option<Truth3> {
        match self.semantics {
            EngineSemantics::Sls => self.oracle.and_then(|o| o.value(a)),
            EngineSemantics::Sldnf => None,
        }
    }

    /// The main tree for `q`.
    pub fn main_tree(&self, q: &Query) -> Result<MainTree> {
        self.check_arity(q)?;
        self.build(q, self.budget.rank, false)
    }

    fn build(&self, q: &Query, rank: usize, first_success: bool) -> Result<MainTree> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut fresh = 0;
        let (mut has_success, mut floundered, mut exhausted) = (false, false, false);
        let mut stack = vec![Pending {
            parent: None,
            depth: 0,
            goal: q.0.clone(),
            answer: q.clone(),
            edge: None,
        }];
        while let Some(pd) = stack.pop() {
            if nodes.len() >= self.budget.nodes {
                exhausted = true;
                break;
            }
            let id = nodes.len();
            let mut node = Node {
                id,
                parent: pd.parent,
                depth: pd.depth,
                goal: Query(pd.goal.clone()),
                selected: None,
                edge: pd.edge,
                status: NodeStatus::Internal,
                subsidiary: None,
                answer: None,
            };
            if pd.goal.is_empty() {
                node.status = NodeStatus::Success;
                node.answer = Some(pd.answer);
                nodes.push(node);
                has_success = true;
                if first_success {
                    break;
                }
                continue;
            }
            if pd.depth >= self.budget.depth {
                node.status = NodeStatus::BudgetExhausted;
                nodes.push(node);
                exhausted = true;
                continue;
            }
            node.selected = Some(0);
            let lit = &pd.goal[0];
            let rest = &pd.goal[1..];
            if lit.positive {
                let children = self.resolve(lit, rest, &pd.answer, id, pd.depth, &mut fresh);
                if children.is_empty() {
                    node.status = NodeStatus::Failed;
                }
                stack.extend(children.into_iter().rev());
                nodes.push(node);
                continue;
            }
            if !lit.atom.is_ground() {
                node.status = NodeStatus::Floundered;
                floundered = true;
                nodes.push(node);
                continue;
            }
            let sub = self.subsidiary(&lit.atom, rank)?;
            let effect = self.negation_effect(&sub);
            node.subsidiary = Some(sub);
            match effect {
                NodeStatus::Internal => stack.push(Pending {
                    parent: Some(id),
                    depth: pd.depth + 1,
                    goal: rest.to_vec(),
                    answer: pd.answer.clone(),
                    edge: Some(Edge::Negation),
                }),
                NodeStatus::Floundered => {
                    node.status = NodeStatus::Floundered;
                    floundered = true;
                }
                NodeStatus::BudgetExhausted => {
                    node.status = NodeStatus::BudgetExhausted;
                    exhausted = true;
                }
                other => node.status = other,
            }
            nodes.push(node);
        }
        if !stack.is_empty() && !(first_success && has_success) {
            exhausted = true;
        }
        let mut tree = MainTree {
            semantics: self.semantics,
            root: q.clone(),
            budget: self.budget,
            outcome: Outcome::Failed,
            has_success,
            floundered,
            exhausted,
            root_oracle: None,
            nodes,
        };
        tree.outcome = self.classify(&mut tree);
        Ok(tree)
    }

    fn classify(&self, t: &mut MainTree) -> Outcome {
        if t.floundered {
            return Outcome::Floundered;
        }
        match self.semantics {
            EngineSemantics::Sldnf => {
                if t.exhausted {
                    Outcome::BudgetExhausted
                } else if t.has_success {
                    Outcome::Success
                } else {
                    Outcome::Failed
                }
            }
            EngineSemantics::Sls => {
                if t.has_success {
                    return Outcome::Success;
                }
                if !t.exhausted {
                    return Outcome::Failed;
                }
                if let [l] = t.root.literals() {
                    if l.positive && l.atom.is_ground() {
                        if let Some(Truth3::F) = self.oracle_value(&l.atom) {
                            t.root_oracle = Some(Truth3::F);
                            return Outcome::Failed;
                        }
                    }
                }
                Outcome::BudgetExhausted
            }
        }
    }

    fn resolve(
        &self,
        lit: &Literal,
        rest: &[Literal],
        answer: &Query,
        parent: usize,
        depth: usize,
        fresh: &mut u32,
    ) -> Vec<Pending> {
        let Some(pred) = Pred::of(&lit.atom) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (ci, c) in self.program.clauses_for(&pred) {
            *fresh += 1;
            let c = rename(c, *fresh);
            let Some(s) = mgu(&c.head, &lit.atom) else {
                continue;
            };
            let goal: Vec<Literal> = c
                .body
                .iter()
                .chain(rest.iter())
                .map(|l| l.apply(&s))
                .collect();
            out.push(Pending {
                parent: Some(parent),
                depth: depth + 1,
                goal,
                answer: answer.apply(&s),
                edge: Some(Edge::Clause {
                    clause: ci,
                    mgu: render_subst(&s),
                }),
            });
        }
        out
    }

    fn subsidiary(&self, a: &Term, rank: usize) -> Result<Subsidiary> {
        let key = (a.clone(), rank);
        if let Some(s) = self.cache.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let mut sub = if rank == 0 {
            Subsidiary {
                atom: a.to_string(),
                outcome: Outcome::BudgetExhausted,
                decided_by: Decision::Rank,
                oracle: None,
                nodes: 0,
            }
        } else {
            let t = self.build(&Query::atom(a.clone()), rank - 1, true)?;
            let outcome = if t.has_success {
                Outcome::Success
            } else if t.floundered {
                Outcome::Floundered
            } else if t.exhausted {
                Outcome::BudgetExhausted
            } else {
                Outcome::Failed
            };
            Subsidiary {
                atom: a.to_string(),
                outcome,
                decided_by: Decision::Tree,
                oracle: None,
                nodes: t.nodes.len(),
            }
        };
        if sub.outcome == Outcome::BudgetExhausted {
            if let Some(v) = self.oracle_value(a) {
                sub.oracle = Some(v);
                sub.decided_by = Decision::Oracle;
                sub.outcome = match v {
                    Truth3::T => Outcome::Success,
                    Truth3::F => Outcome::Failed,
                    Truth3::U => Outcome::Floundered,
                };
            }
        }
        self.cache.lock().unwrap().insert(key, sub.clone());
        Ok(sub)
    }

    /// Status of a node whose selected `¬A` has the given subsidiary tree;
    /// `Internal` means the literal is removed and the derivation continues.
    fn negation_effect(&self, sub: &Subsidiary) -> NodeStatus {
        match sub.outcome {
            Outcome::Success => NodeStatus::Failed,
            Outcome::Failed => NodeStatus::Internal,
            Outcome::Floundered => NodeStatus::Floundered,
            Outcome::BudgetExhausted => NodeStatus::BudgetExhausted,
        }
    }
}

fn rename(c: &Clause, index: u32) -> Clause {
    let s: Subst = c
        .vars()
        .into_iter()
        .map(|v| {
            let w = Var {
                name: v.name.clone(),
                index: index.wrapping_mul(RENAME_STRIDE).wrapping_add(v.index),
            };
            (v, Term::Var(w))
        })
        .collect();
    c.apply(&s)
}

fn render_subst(s: &Subst) -> String {
    let items: Vec<String> = s.iter().map(|(v, t)| format!("{v}/{t}")).collect();
    format!("{{{}}}", items.join(", "))
}

/// Convenience wrapper: build one main tree.
pub fn build_main_tree(
    p: &Program,
    q: &Query,
    budget: Budget,
    semantics: EngineSemantics,
    oracle: Option<&WfOracle>,
) -> Result<MainTree> {
    let mut e = Engine::new(p, semantics, budget);
    if let Some(o) = oracle {
        e = e.with_oracle(o);
    }
    e.main_tree(q)
}
