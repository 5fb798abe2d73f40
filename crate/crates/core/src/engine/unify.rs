use crate::syntax::{Subst, Term, Var};

fn walk<'a>(t: &'a Term, s: &'a Subst) -> &'a Term {
    let mut t = t;
    while let Term::Var(v) = t {
        match s.get(v) {
            Some(b) => t = b,
            None => break,
        }
    }
    t
}

fn occurs(v: &Var, t: &Term, s: &Subst) -> bool {
    match walk(t, s) {
        Term::Var(w) => w == v,
        Term::App(_, args) => args.iter().any(|a| occurs(v, a, s)),
    }
}

/// Extends the triangular substitution `s` to a unifier of `a` and `b`, with
/// occurs check. On failure `s` may hold partial bindings.
pub fn unify_in(a: &Term, b: &Term, s: &mut Subst) -> bool {
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((x, y)) = stack.pop() {
        let x = walk(&x, s).clone();
        let y = walk(&y, s).clone();
        match (x, y) {
            (Term::Var(v), Term::Var(w)) if v == w => {}
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if occurs(&v, &t, s) {
                    return false;
                }
                s.insert(v, t);
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return false;
                }
                stack.extend(xs.iter().cloned().zip(ys.iter().cloned()).rev());
            }
        }
    }
    true
}

/// Most general unifier in idempotent form, or `None`.
pub fn mgu(a: &Term, b: &Term) -> Option<Subst> {
    let mut s = Subst::new();
    if !unify_in(a, b, &mut s) {
        return None;
    }
    Some(
        s.keys()
            .map(|v| (v.clone(), Term::Var(v.clone()).resolve(&s)))
            .collect(),
    )
}

/// `a` is an instance of `b`; the two must not share variables.
pub fn is_instance(a: &Term, b: &Term) -> bool {
    b.match_ground(a, &mut Subst::new())
}
