//! First-order terms over an interned-by-refcount symbol type.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Functor, constant or predicate name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(Arc<str>);

impl Sym {
    pub fn new(name: &str) -> Self {
        Sym(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Sym {
    fn from(s: &str) -> Self {
        Sym::new(s)
    }
}

/// Name of the binary list constructor produced by `[H|T]` sugar.
pub const CONS: &str = ".";
/// Name of the empty list constant.
pub const NIL: &str = "[]";
/// Name used for anonymous variables (`_`).
pub const ANON: &str = "_";

/// Index stride of renamed variables: renaming `k` maps index `i` (below the
/// stride) to `k * RENAME_STRIDE + i`.
pub const RENAME_STRIDE: u32 = 64;

/// A variable. Source variables have `index == 0`; anonymous variables are
/// numbered per clause; renamed variables carry a fresh index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: Sym,
    pub index: u32,
}

impl Var {
    pub fn named(name: &str) -> Self {
        Var {
            name: Sym::new(name),
            index: 0,
        }
    }

    pub fn is_anonymous(&self) -> bool {
        self.name.as_str() == ANON
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, i) = (self.index / RENAME_STRIDE, self.index % RENAME_STRIDE);
        match (self.is_anonymous(), k) {
            (true, 0) => f.write_str(ANON),
            (true, _) => write!(f, "_{k}_{i}"),
            (false, 0) if i == 0 => write!(f, "{}", self.name),
            (false, 0) => write!(f, "{}_{i}", self.name),
            (false, _) => write!(f, "{}_{k}", self.name),
        }
    }
}

/// A term: a variable or a functor applied to arguments. Constants are
/// 0-ary applications.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Sym, Arc<[Term]>),
}

/// Substitution with a deterministic iteration order.
pub type Subst = BTreeMap<Var, Term>;

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Var::named(name))
    }

    pub fn constant(name: &str) -> Self {
        Term::App(Sym::new(name), Arc::from(Vec::new()))
    }

    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::App(Sym::new(name), Arc::from(args))
    }

    pub fn app_sym(name: Sym, args: Vec<Term>) -> Self {
        Term::App(name, Arc::from(args))
    }

    pub fn nil() -> Self {
        Term::constant(NIL)
    }

    pub fn cons(head: Term, tail: Term) -> Self {
        Term::app(CONS, vec![head, tail])
    }

    /// Builds `[e1, ..., en | tail]`.
    pub fn list_with_tail(items: Vec<Term>, tail: Term) -> Self {
        items
            .into_iter()
            .rev()
            .fold(tail, |acc, item| Term::cons(item, acc))
    }

    pub fn list(items: Vec<Term>) -> Self {
        Term::list_with_tail(items, Term::nil())
    }

    pub fn functor(&self) -> Option<(&Sym, usize)> {
        match self {
            Term::Var(_) => None,
            Term::App(f, args) => Some((f, args.len())),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Depth with constants at depth 1. Variables count as depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn is_cons(&self) -> bool {
        matches!(self, Term::App(f, args) if f.as_str() == CONS && args.len() == 2)
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Term::App(f, args) if f.as_str() == NIL && args.is_empty())
    }

    /// Length of a proper list, `None` for anything else.
    pub fn list_len(&self) -> Option<usize> {
        let mut len = 0;
        let mut cur = self;
        loop {
            if cur.is_nil() {
                return Some(len);
            }
            if !cur.is_cons() {
                return None;
            }
            len += 1;
            cur = &cur.args()[1];
        }
    }

    /// Variables in order of first occurrence (left to right, depth first).
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn occurs(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    pub fn apply(&self, subst: &Subst) -> Term {
        if subst.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(v) => match subst.get(v) {
                Some(t) => t.clone(),
                None => self.clone(),
            },
            Term::App(f, args) => {
                if args.is_empty() {
                    return self.clone();
                }
                Term::App(f.clone(), args.iter().map(|a| a.apply(subst)).collect())
            }
        }
    }

    /// Applies a triangular substitution until no bound variable remains.
    pub fn resolve(&self, subst: &Subst) -> Term {
        match self {
            Term::Var(v) => match subst.get(v) {
                Some(t) => t.resolve(subst),
                None => self.clone(),
            },
            Term::App(f, args) => {
                if args.is_empty() {
                    return self.clone();
                }
                Term::App(f.clone(), args.iter().map(|a| a.resolve(subst)).collect())
            }
        }
    }

    /// One-way matching of `self` (a pattern) against a ground term,
    /// extending `subst`. On failure `subst` may hold partial bindings.
    pub fn match_ground(&self, ground: &Term, subst: &mut Subst) -> bool {
        match self {
            Term::Var(v) => match subst.get(v) {
                Some(bound) => bound == ground,
                None => {
                    subst.insert(v.clone(), ground.clone());
                    true
                }
            },
            Term::App(f, args) => match ground {
                Term::App(g, gargs) if f == g && args.len() == gargs.len() => args
                    .iter()
                    .zip(gargs.iter())
                    .all(|(a, b)| a.match_ground(b, subst)),
                _ => false,
            },
        }
    }

    /// Renames every predicate-position symbol; used for primed copies.
    pub fn with_functor(&self, name: Sym) -> Term {
        match self {
            Term::Var(_) => self.clone(),
            Term::App(_, args) => Term::App(name, args.clone()),
        }
    }

    /// Iterates over every subterm, root first.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let t = out[i];
            out.extend(t.args().iter());
            i += 1;
        }
        out
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::App(_, args) if self.is_cons() => {
                f.write_str("[")?;
                write!(f, "{}", args[0])?;
                let mut tail = &args[1];
                loop {
                    if tail.is_cons() {
                        write!(f, ",{}", tail.args()[0])?;
                        tail = &tail.args()[1];
                    } else if tail.is_nil() {
                        break;
                    } else {
                        write!(f, "|{tail}")?;
                        break;
                    }
                }
                f.write_str("]")
            }
            Term::App(name, args) => {
                write!(f, "{name}")?;
                if !args.is_empty() {
                    f.write_str("(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// Predicate or function signature `name/arity`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Pred {
    pub name: Sym,
    pub arity: usize,
}

impl Pred {
    pub fn new(name: &str, arity: usize) -> Self {
        Pred {
            name: Sym::new(name),
            arity,
        }
    }

    pub fn of(atom: &Term) -> Option<Pred> {
        atom.functor().map(|(name, arity)| Pred {
            name: name.clone(),
            arity,
        })
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Ordering used for enumerating Herbrand universes: by depth, then by the
/// structural (functor name, arguments) order.
pub fn universe_order(a: &Term, b: &Term) -> std::cmp::Ordering {
    a.depth().cmp(&b.depth()).then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_sugar_prints_canonically() {
        let l = Term::list(vec![Term::constant("a"), Term::constant("b")]);
        assert_eq!(l.to_string(), "[a,b]");
        let open = Term::list_with_tail(vec![Term::var("E")], Term::var("T"));
        assert_eq!(open.to_string(), "[E|T]");
        assert_eq!(l.list_len(), Some(2));
        assert_eq!(open.list_len(), None);
    }

    #[test]
    fn depth_counts_constants_as_one() {
        assert_eq!(Term::constant("0").depth(), 1);
        let s2 = Term::app("s", vec![Term::app("s", vec![Term::constant("0")])]);
        assert_eq!(s2.depth(), 3);
        assert_eq!(
            Term::list(vec![Term::constant("c"), Term::constant("a")]).depth(),
            3
        );
    }

    #[test]
    fn matching_binds_consistently() {
        let pat = Term::app(
            "m",
            vec![Term::var("E"), Term::cons(Term::var("E"), Term::var("T"))],
        );
        let g = Term::app(
            "m",
            vec![Term::constant("a"), Term::list(vec![Term::constant("a")])],
        );
        let mut s = Subst::new();
        assert!(pat.match_ground(&g, &mut s));
        assert_eq!(pat.apply(&s), g);
        let bad = Term::app(
            "m",
            vec![Term::constant("b"), Term::list(vec![Term::constant("a")])],
        );
        assert!(!pat.match_ground(&bad, &mut Subst::new()));
    }
}
