//! Depth-bounded Herbrand universes and bases, optionally narrowed by
//! per-predicate argument domains.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

use super::ast::{collect_functions, Program};
use super::term::{universe_order, Pred, Sym, Term, CONS, NIL};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 2_000_000;

/// A set of ground terms used as the range of a predicate argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SortExpr {
    Enum(Vec<Term>),
    /// Proper lists of length at most `k` over the element sort.
    Lists(Box<SortExpr>, usize),
    Any,
    Named(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniverseDecl {
    pub symbols: BTreeMap<Sym, usize>,
    pub sorts: Vec<(String, SortExpr)>,
    pub domains: Vec<(Pred, Vec<SortExpr>)>,
}

impl UniverseDecl {
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty() && self.sorts.is_empty() && self.domains.is_empty()
    }
}

#[derive(Clone, Debug)]
struct ArgDomain {
    members: Arc<[Term]>,
    set: Arc<HashSet<Term>>,
}

pub struct GroundUniverse {
    depth: usize,
    functions: BTreeMap<Sym, usize>,
    predicates: BTreeMap<Sym, usize>,
    domains: BTreeMap<Pred, Vec<Option<ArgDomain>>>,
    decl: UniverseDecl,
    cap: usize,
    hu_cache: Mutex<BTreeMap<usize, Arc<[Term]>>>,
    proj_cache: Mutex<HashMap<(Pred, usize, Vec<usize>), Option<Arc<[Term]>>>>,
}

impl Clone for GroundUniverse {
    fn clone(&self) -> Self {
        GroundUniverse {
            depth: self.depth,
            functions: self.functions.clone(),
            predicates: self.predicates.clone(),
            domains: self.domains.clone(),
            decl: self.decl.clone(),
            cap: self.cap,
            hu_cache: Mutex::new(self.hu_cache.lock().unwrap().clone()),
            proj_cache: Mutex::new(self.proj_cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for GroundUniverse {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroundUniverse")
            .field("depth", &self.depth)
            .field("functions", &self.functions)
            .field("predicates", &self.predicates)
            .field("domains", &self.domains.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl GroundUniverse {
    pub fn new(
        functions: BTreeMap<Sym, usize>,
        predicates: BTreeMap<Sym, usize>,
        depth: usize,
    ) -> Self {
        GroundUniverse {
            depth: depth.max(1),
            functions,
            predicates,
            domains: BTreeMap::new(),
            decl: UniverseDecl::default(),
            cap: DEFAULT_CAP,
            hu_cache: Mutex::new(BTreeMap::new()),
            proj_cache: Mutex::new(HashMap::new()),
        }
    }

    /// Universe over the symbols and predicates of a program.
    pub fn for_program(p: &Program, depth: usize) -> Self {
        GroundUniverse::new(p.function_symbols(), p.predicates.clone(), depth)
    }

    /// The same universe at another depth bound, with domains re-resolved.
    pub fn with_depth(&self, depth: usize) -> Result<Self> {
        let mut u = GroundUniverse::new(self.functions.clone(), self.predicates.clone(), depth)
            .with_cap(self.cap);
        u.apply_decl(&self.decl.clone())?;
        Ok(u)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn add_functions(&mut self, symbols: &BTreeMap<Sym, usize>) {
        for (s, a) in symbols {
            self.functions.entry(s.clone()).or_insert(*a);
        }
        self.hu_cache.lock().unwrap().clear();
    }

    pub fn add_predicates(&mut self, preds: &BTreeMap<Sym, usize>) {
        for (s, a) in preds {
            self.predicates.entry(s.clone()).or_insert(*a);
        }
    }

    /// Installs sorts and argument domains. Symbols mentioned by sorts are
    /// added to the universe.
    pub fn apply_decl(&mut self, decl: &UniverseDecl) -> Result<()> {
        let mut extra = decl.symbols.clone();
        for (_, s) in &decl.sorts {
            sort_symbols(s, &mut extra);
        }
        for (_, args) in &decl.domains {
            for s in args {
                sort_symbols(s, &mut extra);
            }
        }
        self.add_functions(&extra);

        let mut named: BTreeMap<String, Option<Arc<[Term]>>> = BTreeMap::new();
        for (name, expr) in &decl.sorts {
            let v = self.resolve_sort(expr, &named)?;
            named.insert(name.clone(), v);
        }
        for (pred, args) in &decl.domains {
            if args.len() != pred.arity {
                return Err(Error::Spec(format!(
                    "domain for {pred} lists {} sorts",
                    args.len()
                )));
            }
            let mut resolved = Vec::new();
            for a in args {
                resolved.push(self.resolve_sort(a, &named)?.map(|members| ArgDomain {
                    set: Arc::new(members.iter().cloned().collect()),
                    members,
                }));
            }
            self.predicates
                .entry(pred.name.clone())
                .or_insert(pred.arity);
            self.domains.insert(pred.clone(), resolved);
        }
        self.proj_cache.lock().unwrap().clear();
        self.decl.symbols.extend(decl.symbols.clone());
        self.decl.sorts.extend(decl.sorts.iter().cloned());
        self.decl.domains.extend(decl.domains.iter().cloned());
        Ok(())
    }

    fn resolve_sort(
        &self,
        expr: &SortExpr,
        named: &BTreeMap<String, Option<Arc<[Term]>>>,
    ) -> Result<Option<Arc<[Term]>>> {
        match expr {
            SortExpr::Any => Ok(None),
            SortExpr::Named(n) => named
                .get(n)
                .cloned()
                .ok_or_else(|| Error::Spec(format!("unknown sort `{n}`"))),
            SortExpr::Enum(ts) => {
                let mut v: Vec<Term> = ts
                    .iter()
                    .filter(|t| t.is_ground() && t.depth() <= self.depth)
                    .cloned()
                    .collect();
                v.sort_by(universe_order);
                v.dedup();
                Ok(Some(v.into()))
            }
            SortExpr::Lists(elem, k) => {
                let elems: Arc<[Term]> = match self.resolve_sort(elem, named)? {
                    Some(e) => e,
                    None => self.hu(self.depth.saturating_sub(1).max(1))?,
                };
                let mut out = vec![Term::nil()];
                let mut layer = vec![Term::nil()];
                for _ in 0..*k {
                    let mut next = Vec::new();
                    for tail in &layer {
                        for e in elems.iter() {
                            let l = Term::cons(e.clone(), tail.clone());
                            if l.depth() <= self.depth {
                                next.push(l);
                            }
                        }
                    }
                    if out.len() + next.len() > self.cap {
                        return Err(Error::UniverseTooLarge {
                            what: format!("list sort over {} elements", elems.len()),
                            size: (out.len() + next.len()) as u128,
                            cap: self.cap,
                        });
                    }
                    out.extend(next.iter().cloned());
                    layer = next;
                }
                out.sort_by(universe_order);
                Ok(Some(out.into()))
            }
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn functions(&self) -> &BTreeMap<Sym, usize> {
        &self.functions
    }

    pub fn predicates(&self) -> &BTreeMap<Sym, usize> {
        &self.predicates
    }

    pub fn preds(&self) -> impl Iterator<Item = Pred> + '_ {
        self.predicates.iter().map(|(n, a)| Pred {
            name: n.clone(),
            arity: *a,
        })
    }

    pub fn has_domains(&self) -> bool {
        !self.domains.is_empty()
    }

    /// `|HU(k)|`, saturating.
    pub fn hu_size(&self, k: usize) -> u128 {
        let consts = self.functions.values().filter(|a| **a == 0).count() as u128;
        let mut n = consts;
        for _ in 1..k {
            let mut next = consts;
            for &a in self.functions.values().filter(|a| **a > 0) {
                next = next.saturating_add(n.saturating_pow(a as u32));
            }
            n = next;
        }
        if k == 0 {
            0
        } else {
            n
        }
    }

    /// All ground terms of depth at most `k`, in universe order.
    pub fn hu(&self, k: usize) -> Result<Arc<[Term]>> {
        if let Some(v) = self.hu_cache.lock().unwrap().get(&k) {
            return Ok(v.clone());
        }
        let size = self.hu_size(k);
        if size > self.cap as u128 {
            return Err(Error::UniverseTooLarge {
                what: format!("HU({k})"),
                size,
                cap: self.cap,
            });
        }
        let consts: Vec<Term> = self
            .functions
            .iter()
            .filter(|(_, a)| **a == 0)
            .map(|(s, _)| Term::app_sym(s.clone(), vec![]))
            .collect();
        let mut terms = consts.clone();
        for _ in 1..k {
            let prev = terms.clone();
            terms = consts.clone();
            for (f, &a) in self.functions.iter().filter(|(_, a)| **a > 0) {
                for combo in Product::new(vec![prev.as_slice(); a]) {
                    terms.push(Term::app_sym(f.clone(), combo));
                }
            }
        }
        if k == 0 {
            terms.clear();
        }
        terms.sort_by(universe_order);
        let arc: Arc<[Term]> = terms.into();
        self.hu_cache.lock().unwrap().insert(k, arc.clone());
        Ok(arc)
    }

    pub fn contains_term(&self, t: &Term) -> bool {
        t.is_ground() && t.depth() <= self.depth && self.symbols_known(t)
    }

    fn symbols_known(&self, t: &Term) -> bool {
        match t {
            Term::Var(_) => false,
            Term::App(f, args) => {
                self.functions.get(f) == Some(&args.len())
                    && args.iter().all(|a| self.symbols_known(a))
            }
        }
    }

    /// Whether a ground atom belongs to `HB(d)`.
    pub fn contains_atom(&self, a: &Term) -> bool {
        let Some(pred) = Pred::of(a) else {
            return false;
        };
        if self.predicates.get(&pred.name) != Some(&pred.arity) {
            return false;
        }
        match self.domains.get(&pred) {
            Some(doms) => a.args().iter().zip(doms).all(|(t, d)| match d {
                Some(d) => d.set.contains(t),
                None => self.contains_term(t),
            }),
            None => a.args().iter().all(|t| self.contains_term(t)),
        }
    }

    /// Whether some ground instance of the (possibly non-ground) atom can lie
    /// in `HB(d)`. Conservative: may answer true for atoms with no instance.
    pub fn may_fit(&self, a: &Term) -> bool {
        if a.is_ground() {
            return self.contains_atom(a);
        }
        let Some(pred) = Pred::of(a) else {
            return false;
        };
        if self.predicates.get(&pred.name) != Some(&pred.arity) {
            return false;
        }
        for (i, t) in a.args().iter().enumerate() {
            if t.depth() > self.depth || !self.pattern_symbols_known(t) {
                return false;
            }
            if self.domain_of(&pred, i).is_some()
                && !self.pattern_fits(&pred, i, t, &mut Vec::new())
            {
                return false;
            }
        }
        true
    }

    fn pattern_symbols_known(&self, t: &Term) -> bool {
        match t {
            Term::Var(_) => true,
            Term::App(f, args) => {
                self.functions.get(f) == Some(&args.len())
                    && args.iter().all(|a| self.pattern_symbols_known(a))
            }
        }
    }

    fn pattern_fits(&self, pred: &Pred, arg: usize, t: &Term, path: &mut Vec<usize>) -> bool {
        match t {
            Term::Var(_) => true,
            _ if t.is_ground() => match self.projection(pred, arg, path) {
                Some(p) => p.binary_search_by(|x| universe_order(x, t)).is_ok(),
                None => true,
            },
            Term::App(_, args) => args.iter().enumerate().all(|(j, c)| {
                path.push(j);
                let ok = self.pattern_fits(pred, arg, c, path);
                path.pop();
                ok
            }),
        }
    }

    fn domain_of(&self, pred: &Pred, arg: usize) -> Option<&ArgDomain> {
        self.domains
            .get(pred)
            .and_then(|d| d.get(arg))
            .and_then(|d| d.as_ref())
    }

    /// Subterms found at `path` inside the declared domain of argument `arg`
    /// of `pred`; `None` when the argument ranges over the whole universe.
    pub fn projection(&self, pred: &Pred, arg: usize, path: &[usize]) -> Option<Arc<[Term]>> {
        let dom = self.domain_of(pred, arg)?;
        if path.is_empty() {
            return Some(dom.members.clone());
        }
        let key = (pred.clone(), arg, path.to_vec());
        if let Some(v) = self.proj_cache.lock().unwrap().get(&key) {
            return v.clone();
        }
        let mut v: Vec<Term> = dom
            .members
            .iter()
            .filter_map(|m| {
                let mut cur = m;
                for &j in path {
                    cur = cur.args().get(j)?;
                }
                Some(cur.clone())
            })
            .collect();
        v.sort_by(universe_order);
        v.dedup();
        let out: Option<Arc<[Term]>> = Some(v.into());
        self.proj_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Candidate values for argument `arg` of `pred`.
    pub fn arg_range(&self, pred: &Pred, arg: usize) -> Result<Arc<[Term]>> {
        match self.domain_of(pred, arg) {
            Some(d) => Ok(d.members.clone()),
            None => self.hu(self.depth),
        }
    }

    pub fn hb_pred_size(&self, pred: &Pred) -> u128 {
        (0..pred.arity)
            .map(|i| match self.domain_of(pred, i) {
                Some(d) => d.members.len() as u128,
                None => self.hu_size(self.depth),
            })
            .fold(1u128, |a, b| a.saturating_mul(b))
    }

    pub fn hb_size(&self) -> u128 {
        self.preds()
            .map(|p| self.hb_pred_size(&p))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    /// The slice of `HB(d)` for one predicate, in universe order of arguments.
    pub fn hb_pred(&self, pred: &Pred) -> Result<Vec<Term>> {
        let size = self.hb_pred_size(pred);
        if size > self.cap as u128 {
            return Err(Error::UniverseTooLarge {
                what: format!("HB(d) slice for {pred}"),
                size,
                cap: self.cap,
            });
        }
        let ranges = (0..pred.arity)
            .map(|i| self.arg_range(pred, i))
            .collect::<Result<Vec<_>>>()?;
        let slices: Vec<&[Term]> = ranges.iter().map(|r| &r[..]).collect();
        Ok(Product::new(slices)
            .map(|args| Term::app_sym(pred.name.clone(), args))
            .collect())
    }

    pub fn hb(&self) -> Result<Vec<Term>> {
        let size = self.hb_size();
        if size > self.cap as u128 {
            return Err(Error::UniverseTooLarge {
                what: "HB(d)".into(),
                size,
                cap: self.cap,
            });
        }
        let mut out = Vec::new();
        for p in self.preds().collect::<Vec<_>>() {
            out.extend(self.hb_pred(&p)?);
        }
        Ok(out)
    }
}

fn sort_symbols(s: &SortExpr, out: &mut BTreeMap<Sym, usize>) {
    match s {
        SortExpr::Enum(ts) => ts.iter().for_each(|t| collect_functions(t, out)),
        SortExpr::Lists(e, _) => {
            out.entry(Sym::new(CONS)).or_insert(2);
            out.entry(Sym::new(NIL)).or_insert(0);
            sort_symbols(e, out);
        }
        SortExpr::Any | SortExpr::Named(_) => {}
    }
}

/// Cartesian product of slices, odometer order with the last position
/// varying fastest.
pub struct Product<'a> {
    slices: Vec<&'a [Term]>,
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Product<'a> {
    pub fn new(slices: Vec<&'a [Term]>) -> Self {
        let done = slices.iter().any(|s| s.is_empty());
        Product {
            idx: vec![0; slices.len()],
            slices,
            done,
        }
    }
}

impl Iterator for Product<'_> {
    type Item = Vec<Term>;

    fn next(&mut self) -> Option<Vec<Term>> {
        if self.done {
            return None;
        }
        let item = self
            .idx
            .iter()
            .zip(&self.slices)
            .map(|(&i, s)| s[i].clone())
            .collect();
        let mut k = self.slices.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.idx[k] += 1;
            if self.idx[k] < self.slices[k].len() {
                break;
            }
            self.idx[k] = 0;
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd_universe(d: usize) -> GroundUniverse {
        let mut f = BTreeMap::new();
        f.insert(Sym::new("0"), 0);
        f.insert(Sym::new("s"), 1);
        let mut p = BTreeMap::new();
        p.insert(Sym::new("o"), 1);
        GroundUniverse::new(f, p, d)
    }

    #[test]
    fn hu_is_depth_bounded_and_ordered() {
        let u = odd_universe(3);
        let hu: Vec<String> = u.hu(3).unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(hu, vec!["0", "s(0)", "s(s(0))"]);
        assert_eq!(u.hu_size(3), 3);
        assert!(u.contains_atom(&Term::app("o", vec![Term::constant("0")])));
        assert!(!u.contains_atom(&Term::app("o", vec![Term::constant("1")])));
    }

    #[test]
    fn hu_monotone_in_depth() {
        let u = odd_universe(5);
        for k in 1..5 {
            let small = u.hu(k).unwrap();
            let big = u.hu(k + 1).unwrap();
            assert!(small.iter().all(|t| big.contains(t)));
        }
    }

    #[test]
    fn list_domains_and_projections() {
        let mut u = GroundUniverse::new(BTreeMap::new(), BTreeMap::new(), 5);
        let node = SortExpr::Enum(vec![Term::constant("a"), Term::constant("b")]);
        let decl = UniverseDecl {
            symbols: BTreeMap::new(),
            sorts: vec![("node".into(), node)],
            domains: vec![(
                Pred::new("m", 2),
                vec![
                    SortExpr::Named("node".into()),
                    SortExpr::Lists(Box::new(SortExpr::Named("node".into())), 2),
                ],
            )],
        };
        u.apply_decl(&decl).unwrap();
        let m = Pred::new("m", 2);
        assert_eq!(u.hb_pred(&m).unwrap().len(), 2 * 7);
        let tails = u.projection(&m, 1, &[1]).unwrap();
        assert_eq!(tails.len(), 3);
        let pat = Term::app(
            "m",
            vec![
                Term::var("E"),
                Term::list_with_tail(
                    vec![Term::var("X")],
                    Term::list(vec![Term::constant("a"), Term::constant("a")]),
                ),
            ],
        );
        assert!(!u.may_fit(&pat));
    }

    #[test]
    fn size_guard_reports() {
        let mut f = BTreeMap::new();
        f.insert(Sym::new("a"), 0);
        f.insert(Sym::new("f"), 2);
        let u = GroundUniverse::new(f, BTreeMap::new(), 6).with_cap(1000);
        assert!(matches!(u.hu(6), Err(Error::UniverseTooLarge { .. })));
    }
}
