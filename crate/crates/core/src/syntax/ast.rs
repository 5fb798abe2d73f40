use std::collections::BTreeMap;
use std::fmt;

use super::term::{Pred, Subst, Sym, Term, Var};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Term,
}

impl Literal {
    pub fn pos(atom: Term) -> Self {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: Term) -> Self {
        Literal {
            positive: false,
            atom,
        }
    }

    pub fn apply(&self, subst: &Subst) -> Literal {
        Literal {
            positive: self.positive,
            atom: self.atom.apply(subst),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    pub fn pred(&self) -> Pred {
        Pred::of(&self.atom).expect("literal atom is never a variable")
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "not {}", self.atom)
        }
    }
}

/// `head :- body.`; a fact has an empty body.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub head: Term,
    pub body: Vec<Literal>,
}

impl Clause {
    pub fn fact(head: Term) -> Self {
        Clause { head, body: vec![] }
    }

    pub fn is_definite(&self) -> bool {
        self.body.iter().all(|l| l.positive)
    }

    pub fn is_ground(&self) -> bool {
        self.head.is_ground() && self.body.iter().all(Literal::is_ground)
    }

    /// Variables in order of first occurrence, head first.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.head.collect_vars(&mut out);
        for l in &self.body {
            l.atom.collect_vars(&mut out);
        }
        out
    }

    pub fn apply(&self, subst: &Subst) -> Clause {
        Clause {
            head: self.head.apply(subst),
            body: self.body.iter().map(|l| l.apply(subst)).collect(),
        }
    }

    /// Head followed by body atoms.
    pub fn atoms(&self) -> impl Iterator<Item = &Term> {
        std::iter::once(&self.head).chain(self.body.iter().map(|l| &l.atom))
    }

    pub fn pred(&self) -> Pred {
        Pred::of(&self.head).expect("clause head is never a variable")
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            write_literals(f, &self.body)?;
        }
        f.write_str(".")
    }
}

fn write_literals(f: &mut fmt::Formatter<'_>, lits: &[Literal]) -> fmt::Result {
    for (i, l) in lits.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// A conjunction of literals. The empty query is written `true`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Query(pub Vec<Literal>);

impl Query {
    pub fn atom(a: Term) -> Self {
        Query(vec![Literal::pos(a)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn apply(&self, subst: &Subst) -> Query {
        Query(self.0.iter().map(|l| l.apply(subst)).collect())
    }

    pub fn is_ground(&self) -> bool {
        self.0.iter().all(Literal::is_ground)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for l in &self.0 {
            l.atom.collect_vars(&mut out);
        }
        out
    }
}

impl fmt::Debug for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("true");
        }
        write_literals(f, &self.0)
    }
}

/// A query or the negation of a query; the objects truth values are taken of.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    Query(Query),
    NotQuery(Query),
}

impl Formula {
    pub fn query(&self) -> &Query {
        match self {
            Formula::Query(q) | Formula::NotQuery(q) => q,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Query(q) => write!(f, "{q}"),
            Formula::NotQuery(q) => write!(f, "not ({q})"),
        }
    }
}

/// An ordered list of clauses together with the predicate signature they use.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Program {
    pub clauses: Vec<Clause>,
    pub predicates: BTreeMap<Sym, usize>,
}

impl Program {
    /// Builds a program, inferring predicate arities. Panics are avoided by
    /// keeping the first arity seen; use the parser for checked input.
    pub fn from_clauses(clauses: Vec<Clause>) -> Self {
        let mut predicates = BTreeMap::new();
        for c in &clauses {
            for a in c.atoms() {
                if let Some((name, arity)) = a.functor() {
                    predicates.entry(name.clone()).or_insert(arity);
                }
            }
        }
        Program {
            clauses,
            predicates,
        }
    }

    pub fn is_definite(&self) -> bool {
        self.clauses.iter().all(Clause::is_definite)
    }

    pub fn preds(&self) -> impl Iterator<Item = Pred> + '_ {
        self.predicates.iter().map(|(n, a)| Pred {
            name: n.clone(),
            arity: *a,
        })
    }

    /// Function symbols occurring in argument positions.
    pub fn function_symbols(&self) -> BTreeMap<Sym, usize> {
        let mut out = BTreeMap::new();
        for c in &self.clauses {
            for a in c.atoms() {
                for arg in a.args() {
                    collect_functions(arg, &mut out);
                }
            }
        }
        out
    }

    pub fn clauses_for<'a>(
        &'a self,
        pred: &'a Pred,
    ) -> impl Iterator<Item = (usize, &'a Clause)> + 'a {
        self.clauses
            .iter()
            .enumerate()
            .filter(move |(_, c)| Pred::of(&c.head).as_ref() == Some(pred))
    }
}

pub fn collect_functions(t: &Term, out: &mut BTreeMap<Sym, usize>) {
    if let Term::App(f, args) = t {
        out.entry(f.clone()).or_insert(args.len());
        for a in args.iter() {
            collect_functions(a, out);
        }
    }
}

impl fmt::Debug for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
